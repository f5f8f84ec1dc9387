#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "oneharm/error.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm_cli/commands.hpp"

namespace {

using oneharm::ErrorKind;
using namespace oneharm::cli;

std::string render(const Panel& panel, const std::string& format) {
  if (format == "json") return to_json(panel.table);
  if (format == "svg") return to_svg(panel.table, *panel.plot);
  return to_csv(panel.table);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) oneharm::fail(ErrorKind::validation, "cannot write " + path.string());
}

void emit(const Output& out, const std::string& format, const std::string& out_path) {
  if (format == "svg" && !out.panels.empty() && !out.panels.front().plot)
    oneharm::fail(ErrorKind::usage, "this command has no plot; use --format csv or json");
  for (std::size_t i = 0; i < out.panels.size(); ++i) {
    const Panel& panel = out.panels[i];
    // Secondary panels without a plot fall back to CSV.
    const std::string fmt = format == "svg" && !panel.plot ? "csv" : format;
    const std::string text = render(panel, fmt);
    if (out_path.empty()) {
      if (i) std::cout << '\n';
      std::cout << text;
      continue;
    }
    std::filesystem::path path = out_path;
    if (i) {
      // "<stem>_<suffix>", where a table named "<first>_<suffix>" contributes only its suffix.
      const std::string& first = out.panels.front().table.name;
      std::string suffix = panel.table.name;
      if (suffix.rfind(first + "_", 0) == 0) suffix.erase(0, first.size() + 1);
      path = path.parent_path() / (path.stem().string() + "_" + suffix + "." + fmt);
    }
    write_file(path, text);
  }
  std::cout.flush();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::domain:
    case ErrorKind::validation:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram spectra, continuation and moment problems of one-harmonic maps", "oneharm"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Plain key=value file; command-line flags take precedence");

  Options opt;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("--s", opt.s, "Order s, or a range a..b where accepted");
  app.add_option("--p", opt.p, "Index p >= 1");
  app.add_option("--q", opt.q, "Sector q in [1, s]");
  app.add_option("--beta", opt.beta, "Weight exponent beta > 0");
  app.add_option("--n", opt.n, "Truncation: block size, table length or Jacobi depth");
  app.add_option("--zeta", opt.zeta, "Absolute parameter zeta");
  app.add_option("--zeta-ratio", opt.zeta_ratio, "zeta / zeta_c");
  app.add_option("--grid", opt.grid, "a:b:n[,log]; for ratio axes ',log' spaces 1 - x geometrically");
  app.add_option("--tol", opt.tol, "Tolerance");
  app.add_option("--u", opt.u, "Real part of the spectral variable u");
  app.add_option("--u-im", opt.u_im, "Imaginary part of u");
  app.add_option("--side", opt.side, "Side of the cut: above, below, none")->check(CLI::IsMember({"above", "below", "none"}));
  app.add_option("--k", opt.k, "Number of leading eigenvalues to report")->check(CLI::Range(1, 1000));
  app.add_flag("--mass", opt.mass, "density: also integrate mass and moments");
  app.add_option("--level", opt.level, "selftest level")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--id", opt.figure, "figure id")->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  app.add_option("--out", out_path, "Output path (stdout when absent)");
  app.add_option("--format", opt.format, "csv, svg or json")->check(CLI::IsMember({"csv", "svg", "json"}));
  app.add_option("--precision", opt.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--threads", threads, "Worker threads for grid sweeps")->check(CLI::Range(1u, 1024u));

  static const std::map<std::string, std::string> blurbs{
      {"thresholds", "exact zeta_c and zeta_univ"},
      {"raney", "Raney numbers with a series cross-check"},
      {"sigma", "Gram weight sigma_p over a zeta grid"},
      {"hessian", "Hessian coefficient matrix"},
      {"block", "entries of the weighted sector block"},
      {"spectrum", "leading block eigenvalues over a zeta grid"},
      {"stiff-fit", "affine fit of the top eigenvalue against L"},
      {"soft", "soft eigenvalues and their compressed limits"},
      {"align", "alignment of the top eigenvector with the spike"},
      {"continue", "analytic continuation of the Gram generating function"},
      {"rho", "discontinuity density across the cut"},
      {"resonant-fit", "fit of the logarithmic coefficient at the branch point"},
      {"jacobi", "Jacobi recurrence coefficients from exact moments"},
      {"weyl", "Weyl function against the generating function"},
      {"density", "representing density on [0, 1/zeta_c^2]"},
      {"figure", "figure data (--id fig1..fig4)"},
      {"selftest", "acceptance checks"},
  };
  for (const auto& name : command_names()) {
    const auto it = blurbs.find(name);
    app.add_subcommand(name, it == blurbs.end() ? std::string() : it->second)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  oneharm::set_default_threads(threads);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Output out = run_command(command, opt);
    for (const auto& note : out.notes) std::cerr << note << '\n';
    emit(out, opt.format, out_path);
    return out.exit_code;
  } catch (const oneharm::Error& e) {
    std::cerr << "oneharm " << command << ": " << oneharm::to_string(e.kind()) << " error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "oneharm " << command << ": " << e.what() << '\n';
    return 1;
  }
}
