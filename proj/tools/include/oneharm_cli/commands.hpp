#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oneharm_cli/svg.hpp"
#include "oneharm_cli/table.hpp"

namespace oneharm::cli {

// Parsed flags. Unset optionals take the per-command default.
struct Options {
  std::optional<std::string> s;
  std::optional<int> p;
  std::optional<int> q;
  std::optional<double> beta;
  std::optional<int> n;
  std::optional<double> zeta;
  std::optional<double> zeta_ratio;
  std::optional<std::string> grid;
  std::optional<double> tol;
  std::optional<double> u;
  double u_im = 0.0;
  std::string side = "above";
  int k = 6;
  bool mass = false;
  std::string level = "quick";
  std::string figure = "fig1";
  std::string format = "csv";
  std::string precision = "extended";
};

struct Panel {
  Table table;
  std::optional<PlotSpec> plot;
};

struct Output {
  std::vector<Panel> panels;  // the first panel goes to --out; the rest to <stem>_<table name>.<ext>
  std::vector<std::string> notes;  // human-readable summary lines for stderr
  int exit_code = 0;
};

const std::vector<std::string>& command_names();

// Runs one command; library errors propagate as oneharm::Error.
Output run_command(const std::string& name, const Options& opt);

Output make_figure(const Options& opt);

}  // namespace oneharm::cli
