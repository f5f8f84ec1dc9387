#pragma once

#include <string>
#include <vector>

namespace oneharm::cli {

// "a:b:n" or "a:b:n,log".
struct GridSpec {
  double a = 0.0;
  double b = 0.0;
  int n = 0;
  bool log = false;
};

GridSpec parse_grid(const std::string& text);

// How ",log" is read: geometric in x, or geometric in the distance 1 - x (for ratios approaching 1).
enum class GridAxis { plain, approach_one };

std::vector<double> expand(const GridSpec& g, GridAxis axis);

// "3" or "2..6".
std::vector<int> parse_int_range(const std::string& text);

}  // namespace oneharm::cli
