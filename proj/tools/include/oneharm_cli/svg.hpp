#pragma once

#include <string>
#include <vector>

#include "oneharm_cli/table.hpp"

namespace oneharm::cli {

// Polyline plot of y-columns against an x-column. Rows sharing the value of `group` form one curve
// per y-column; an empty `group` means a single curve per y-column.
struct PlotSpec {
  std::string title;
  std::string x;
  std::vector<std::string> y;
  std::string group;
  bool log_x = false;
  bool log_y = false;
  // Rows with a non-finite or (on log axes) non-positive coordinate are skipped.
};

std::string to_svg(const Table& t, const PlotSpec& plot);

}  // namespace oneharm::cli
