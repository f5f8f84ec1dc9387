#include "oneharm_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "oneharm/acceptance.hpp"
#include "oneharm/continuation.hpp"
#include "oneharm/error.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/jacobi.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/raney.hpp"
#include "oneharm/spectra.hpp"
#include "oneharm_cli/grid.hpp"

namespace oneharm::cli {
namespace {

constexpr const char* default_ratio_grid = "0.99:0.99999:9,log";

int single_s(const Options& opt, int fallback = 3) {
  if (!opt.s) return fallback;
  const auto v = parse_int_range(*opt.s);
  if (v.size() != 1) fail(ErrorKind::usage, "this command takes a single --s");
  validate_order(v[0]);
  return v[0];
}

int get_p(const Options& opt) { return opt.p.value_or(1); }

BlockParams block_params(const Options& opt, int default_n = 30) {
  BlockParams bp{single_s(opt), opt.q.value_or(1), opt.beta.value_or(1.0), opt.n.value_or(default_n)};
  require(bp.q >= 1 && bp.q <= bp.s, ErrorKind::usage, "--q must lie in [1, s]");
  require(bp.beta > 0.0, ErrorKind::usage, "--beta must be positive");
  require(bp.n >= 1, ErrorKind::usage, "--n must be positive");
  return bp;
}

// zeta/zeta_c values requested through --zeta, --zeta-ratio or --grid.
std::vector<double> ratio_points(const Options& opt, int s, const char* default_grid) {
  if (opt.zeta && opt.zeta_ratio) fail(ErrorKind::usage, "--zeta and --zeta-ratio are exclusive");
  if (opt.zeta) return {*opt.zeta / zeta_c(s)};
  if (opt.zeta_ratio) return {*opt.zeta_ratio};
  return expand(parse_grid(opt.grid.value_or(default_grid)), GridAxis::approach_one);
}

std::vector<double> plain_points(const Options& opt, const char* default_grid) {
  return expand(parse_grid(opt.grid.value_or(default_grid)), GridAxis::plain);
}

Side parse_side(const std::string& side) {
  if (side == "above") return Side::above;
  if (side == "below") return Side::below;
  if (side == "none") return Side::none;
  fail(ErrorKind::usage, "--side must be above, below or none");
}

// Rows computed concurrently, stored in grid order.
std::vector<std::vector<Cell>> sweep(std::size_t n, const std::function<std::vector<Cell>(std::size_t)>& row) {
  std::vector<std::vector<Cell>> rows(n);
  parallel_for(n, default_threads(), [&](std::size_t i) { rows[i] = row(i); });
  return rows;
}

void add_rows(Table& t, std::vector<std::vector<Cell>> rows) {
  for (auto& r : rows) t.add_row(std::move(r));
}

Output single(Table t, std::optional<PlotSpec> plot = std::nullopt) {
  Output o;
  o.panels.push_back({std::move(t), std::move(plot)});
  return o;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------------------------

Output cmd_thresholds(const Options& opt) {
  Table t;
  t.name = "thresholds";
  t.columns = {"s", "zeta_c_exact", "zeta_c", "zeta_univ_exact", "zeta_univ", "ratio_exact", "ratio"};
  for (int s : parse_int_range(opt.s.value_or("2..6"))) {
    const Thresholds th = thresholds(s);
    t.add_row({static_cast<long long>(s), to_string(th.zeta_c), th.zeta_c.get_d(), to_string(th.zeta_univ),
               th.zeta_univ.get_d(), to_string(th.ratio), th.ratio.get_d()});
  }
  return single(std::move(t), PlotSpec{"thresholds", "s", {"zeta_c", "zeta_univ"}, "", false, true});
}

Output cmd_raney(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt), n = opt.n.value_or(12);
  validate_raney_args(s, p);
  require(n >= 0, ErrorKind::usage, "--n must be >= 0");
  const auto oracle = raney_series_oracle(s, p, n);
  Table t;
  t.name = "raney";
  t.add_meta("s", std::to_string(s));
  t.add_meta("p", std::to_string(p));
  t.columns = {"n", "raney", "series_oracle_agrees", "scaled_log"};
  for (int m = 0; m <= n; ++m) {
    const BigInt r = raney(s, p, m);
    t.add_row({static_cast<long long>(m), r.get_str(), std::string(r == oracle[m] ? "yes" : "no"),
               log_abs(r) + m * std::log(zeta_c(s))});
  }
  return single(std::move(t), PlotSpec{"log R(n) zeta_c^n", "n", {"scaled_log"}, "", false, false});
}

Output cmd_sigma(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt);
  validate_raney_args(s, p);
  const double tol = opt.tol.value_or(default_tol);
  const auto ratios = ratio_points(opt, s, default_ratio_grid);
  Table t;
  t.name = "sigma";
  t.columns = {"s", "p", "zeta_ratio", "zeta", "L", "sigma"};
  add_rows(t, sweep(ratios.size(), [&](std::size_t i) -> std::vector<Cell> {
             const double eta = ratios[i], zeta = eta * zeta_c(s);
             return {static_cast<long long>(s), static_cast<long long>(p), eta, zeta, log_scale_ratio(eta),
                     sigma_p(s, p, zeta, tol)};
           }));
  return single(std::move(t), PlotSpec{"Gram weight", "L", {"sigma"}, "", false, false});
}

Output cmd_hessian(const Options& opt) {
  const int s = single_s(opt), n = opt.n.value_or(12);
  require(n >= 1, ErrorKind::usage, "--n must be positive");
  double zeta = 0.5 * zeta_c(s);
  if (opt.zeta) zeta = *opt.zeta;
  if (opt.zeta_ratio) zeta = *opt.zeta_ratio * zeta_c(s);
  Table t;
  t.name = "hessian";
  t.add_meta("s", std::to_string(s));
  t.add_meta("zeta", format_double(zeta));
  t.columns = {"m", "n", "H"};
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k)
      t.add_row({static_cast<long long>(m), static_cast<long long>(k), hessian_entry(s, zeta, m, k)});
  return single(std::move(t));
}

Output cmd_block(const Options& opt) {
  const BlockParams bp = block_params(opt);
  const double eta = opt.zeta ? *opt.zeta / zeta_c(bp.s) : opt.zeta_ratio.value_or(0.99);
  const auto wb = weighted_block(bp.s, eta * zeta_c(bp.s), bp.q, bp.beta, bp.n, opt.tol.value_or(default_tol));
  Table t;
  t.name = "block";
  t.add_meta("s", std::to_string(bp.s));
  t.add_meta("q", std::to_string(bp.q));
  t.add_meta("beta", format_double(bp.beta));
  t.add_meta("zeta_ratio", format_double(eta));
  t.add_meta("rows_summed", std::to_string(wb.terms));
  t.columns = {"i", "j", "p_i", "p_j", "G"};
  for (int i = 0; i < bp.n; ++i)
    for (int j = 0; j < bp.n; ++j)
      t.add_row({static_cast<long long>(i), static_cast<long long>(j), block_index(bp.s, bp.q, i),
                 block_index(bp.s, bp.q, j), wb.matrix(i, j)});
  return single(std::move(t));
}

std::vector<std::string> mu_columns(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int k = from; k <= to; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

Output cmd_spectrum(const Options& opt) {
  const BlockParams bp = block_params(opt);
  const int k = std::min(opt.k, bp.n);
  const auto ratios = ratio_points(opt, bp.s, default_ratio_grid);
  Table t;
  t.name = "spectrum";
  t.columns = {"s", "q", "beta", "N", "zeta_ratio", "L"};
  for (auto& c : mu_columns("mu", 1, k)) t.columns.push_back(c);
  add_rows(t, sweep(ratios.size(), [&](std::size_t i) -> std::vector<Cell> {
             const auto bs = block_spectrum(bp, ratios[i]);
             std::vector<Cell> row{static_cast<long long>(bp.s), static_cast<long long>(bp.q), bp.beta,
                                   static_cast<long long>(bp.n), ratios[i], bs.L};
             for (int j = 0; j < k; ++j) row.push_back(bs.eig.values[j]);
             return row;
           }));
  return single(std::move(t), PlotSpec{"block spectrum", "L", mu_columns("mu", 1, k), "", false, true});
}

Output cmd_stiff_fit(const Options& opt) {
  const BlockParams bp = block_params(opt);
  const auto ratios = ratio_points(opt, bp.s, default_ratio_grid);
  const StiffFit fit = stiff_trajectory(bp, ratios);
  const auto spike = spike_vector(bp.s, bp.q, bp.beta, bp.n);
  Table t;
  t.name = "stiff_fit";
  t.add_meta("slope", format_double(fit.slope));
  t.add_meta("intercept", format_double(fit.intercept));
  t.add_meta("residual", format_double(fit.residual));
  t.add_meta("gamma_truncated", format_double(fit.gamma_truncated));
  t.add_meta("gamma_analytic", format_double(spike.gamma_analytic));
  t.add_meta("fitted_points", std::to_string(fit.fitted));
  t.columns = {"zeta_ratio", "L", "mu1", "affine_fit"};
  for (std::size_t i = 0; i < ratios.size(); ++i)
    t.add_row({ratios[i], fit.L_values[i], fit.mu1[i], fit.intercept + fit.slope * fit.L_values[i]});
  Output o = single(std::move(t), PlotSpec{"stiff eigenvalue", "L", {"mu1", "affine_fit"}, "", false, false});
  o.notes.push_back("slope " + fmt("%.10g", fit.slope) + ", truncated Gamma " + fmt("%.10g", fit.gamma_truncated) +
                    ", relative deviation " + fmt("%+.3e", fit.slope / fit.gamma_truncated - 1.0));
  return o;
}

Output cmd_soft(const Options& opt) {
  const BlockParams bp = block_params(opt, 40);
  const int k = std::min(opt.k, bp.n);
  require(k >= 2, ErrorKind::usage, "--k must be at least 2");
  const auto ratios = ratio_points(opt, bp.s, "0.99:0.9999:7,log");
  Table t;
  t.name = "soft";
  t.columns = {"s", "q", "zeta_ratio", "L", "inv_L"};
  for (auto& c : mu_columns("mu", 2, k)) t.columns.push_back(c);
  for (auto& c : mu_columns("compressed", 2, k)) t.columns.push_back(c);
  add_rows(t, sweep(ratios.size(), [&](std::size_t i) -> std::vector<Cell> {
             const auto ss = soft_spectrum(bp, ratios[i], k);
             const double L = log_scale_ratio(ratios[i]);
             std::vector<Cell> row{static_cast<long long>(bp.s), static_cast<long long>(bp.q), ratios[i], L, 1.0 / L};
             for (double v : ss.mu) row.push_back(v);
             for (int j = 0; j + 1 < k; ++j) row.push_back(ss.compressed[j]);
             return row;
           }));
  return single(std::move(t), PlotSpec{"soft spectrum", "inv_L", mu_columns("mu", 2, k), "", false, true});
}

Output cmd_align(const Options& opt) {
  const BlockParams bp = block_params(opt);
  const auto ratios = ratio_points(opt, bp.s, "0.99:0.9999:9,log");
  Table t;
  t.name = "align";
  t.columns = {"zeta_ratio", "L", "align", "defect_times_L"};
  add_rows(t, sweep(ratios.size(), [&](std::size_t i) -> std::vector<Cell> {
             const double a = eigvec_alignment(bp, ratios[i]).value, L = log_scale_ratio(ratios[i]);
             return {ratios[i], L, a, (1.0 - a) * L};
           }));
  return single(std::move(t), PlotSpec{"stiff alignment", "L", {"defect_times_L"}, "", false, false});
}

ContinuationOptions cont_options(const Options& opt) {
  ContinuationOptions co;
  co.tol = opt.tol.value_or(1e-12);
  return co;
}

Output cmd_continue(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt);
  validate_raney_args(s, p);
  const double zc2 = zeta_c(s) * zeta_c(s);
  std::vector<Complex> us;
  if (opt.u)
    us.emplace_back(*opt.u, opt.u_im);
  else
    for (double xi : plain_points(opt, "0.1:3:30")) us.emplace_back(xi * zc2, opt.u_im);
  const Side side = parse_side(opt.side);
  const auto co = cont_options(opt);
  Table t;
  t.name = "continue";
  t.add_meta("s", std::to_string(s));
  t.add_meta("p", std::to_string(p));
  t.columns = {"u_re", "u_im", "xi_re", "side", "G_re", "G_im", "dG_re", "dG_im", "sigma_re", "sigma_im", "steps"};
  add_rows(t, sweep(us.size(), [&](std::size_t i) -> std::vector<Cell> {
             const Complex u = us[i];
             const bool on_cut = u.imag() == 0.0 && u.real() > zc2;
             const auto st = gp_continue(s, p, u, on_cut ? side : Side::none, co);
             const Complex sig = sigma_from_state(s, p, st);
             return {u.real(), u.imag(), u.real() / zc2, to_string(st.side), st.value.real(), st.value.imag(),
                     st.derivs[1].real(), st.derivs[1].imag(), sig.real(), sig.imag(), static_cast<long long>(st.steps)};
           }));
  return single(std::move(t), PlotSpec{"continued generating function", "xi_re", {"G_re", "G_im"}, "", false, false});
}

Output cmd_rho(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt);
  validate_raney_args(s, p);
  const double zc2 = zeta_c(s) * zeta_c(s);
  std::vector<double> us;
  if (opt.u)
    us.push_back(*opt.u);
  else
    for (double xi : plain_points(opt, "1.001:10:40,log")) us.push_back(xi * zc2);
  const auto co = cont_options(opt);
  Table t;
  t.name = "rho";
  t.add_meta("edge_closed", format_double(edge_density_closed(s, p)));
  t.add_meta("edge_closed_exact", "(" + to_string(edge_density_closed_exact(s, p).coefficient) + ")/pi");
  t.add_meta("edge_extrapolated", format_double(edge_density_extrapolated(s, p, co)));
  t.columns = {"s", "p", "u", "xi", "rho", "imag_residue"};
  add_rows(t, sweep(us.size(), [&](std::size_t i) -> std::vector<Cell> {
             const auto dv = disc_density(s, p, us[i], co);
             return {static_cast<long long>(s), static_cast<long long>(p), us[i], us[i] / zc2, dv.rho, dv.imag_residue};
           }));
  return single(std::move(t), PlotSpec{"discontinuity density", "xi", {"rho"}, "", true, false});
}

Precision parse_precision(const std::string& text) {
  if (text == "extended") return Precision::extended;
  if (text == "double") return Precision::double_precision;
  fail(ErrorKind::usage, "--precision must be double or extended");
}

Output cmd_resonant_fit(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt);
  const auto eps = plain_points(opt, "1e-4:3e-3:16,log");
  const auto rc = resonant_fit(s, p, eps, parse_precision(opt.precision));
  Table t;
  t.name = "resonant_fit";
  t.add_meta("precision", opt.precision);
  t.add_meta("B_closed_exact", "(" + to_string(B_closed_form(s, p).coefficient) + ")/pi");
  t.columns = {"s", "p", "B_fit", "B_closed", "rel_err", "a0", "a1", "a2", "rms"};
  t.add_row({static_cast<long long>(s), static_cast<long long>(p), rc.B_fit, rc.B_at_branch,
             std::fabs(rc.B_fit / rc.B_at_branch - 1.0), rc.A_fit[0], rc.A_fit[1], rc.A_fit[2], rc.rms});
  return single(std::move(t));
}

Output cmd_jacobi(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt), n = opt.n.value_or(10);
  require(n >= 1, ErrorKind::usage, "--n must be positive");
  const auto mseq = moments(s, p, 2 * n);
  const auto jac = jacobi_coefficients(mseq, n);
  Table t;
  t.name = "jacobi";
  t.add_meta("s", std::to_string(s));
  t.add_meta("p", std::to_string(p));
  t.add_meta("hankel_positive", hankel_positivity(mseq, n) ? "yes" : "no");
  t.add_meta("units", "exact columns in x = t zeta_c^2; float columns in t");
  t.columns = {"k", "b_exact", "b", "a2_exact", "a"};
  for (int k = 0; k < n; ++k) {
    const bool has_a = k >= 1;
    t.add_row({static_cast<long long>(k), to_string(jac.b_exact[k]), jac.b[k],
               has_a ? to_string(jac.a2_exact[k - 1]) : std::string(), has_a ? jac.a[k - 1] : 0.0});
  }
  return single(std::move(t));
}

Output cmd_weyl(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt), n = opt.n.value_or(40);
  require(n >= 1, ErrorKind::usage, "--n must be positive");
  const auto jac = jacobi_coefficients(moments(s, p, 2 * n), n);
  const double zc2 = zeta_c(s) * zeta_c(s);
  std::vector<Complex> us;
  if (opt.u)
    us.emplace_back(*opt.u, opt.u_im);
  else
    for (double xi : plain_points(opt, "-3:0.9:20")) us.emplace_back(xi * zc2, opt.u_im);
  const auto co = cont_options(opt);
  Table t;
  t.name = "weyl";
  t.add_meta("n", std::to_string(n));
  t.columns = {"u_re", "u_im", "weyl_re", "weyl_im", "G_re", "G_im", "abs_diff"};
  add_rows(t, sweep(us.size(), [&](std::size_t i) -> std::vector<Cell> {
             const Complex u = us[i];
             const Complex w = weyl_function(jac, u);
             const Complex g = std::abs(u) <= 0.98 * zc2 ? gp_series(s, p, u) : gp_continue(s, p, u, Side::none, co).value;
             return {u.real(), u.imag(), w.real(), w.imag(), g.real(), g.imag(), std::abs(w - g)};
           }));
  return single(std::move(t), PlotSpec{"Weyl function vs generating function", "u_re", {"weyl_re", "G_re"}, "", false,
                                       false});
}

Output cmd_density(const Options& opt) {
  const int s = single_s(opt), p = get_p(opt);
  validate_raney_args(s, p);
  const double t_max = 1.0 / (zeta_c(s) * zeta_c(s));
  const auto ratios = plain_points(opt, "0.001:0.999:50");
  const double tol = opt.tol.value_or(1e-12);
  Table t;
  t.name = "density";
  t.add_meta("t_max", format_double(t_max));
  if (opt.mass) {
    const auto pm = perron_mass(s, p, 1e-3, 1e-7, 1e-10);
    t.add_meta("mass", format_double(pm.mass));
    t.add_meta("first_moment", format_double(pm.first_moment));
    t.add_meta("second_moment", format_double(pm.second_moment));
    t.add_meta("mass_window", "[1e-10, 1 - 1e-3] t_max");
  }
  t.columns = {"s", "p", "t", "t_ratio", "rho"};
  add_rows(t, sweep(ratios.size(), [&](std::size_t i) -> std::vector<Cell> {
             const double tt = ratios[i] * t_max;
             return {static_cast<long long>(s), static_cast<long long>(p), tt, ratios[i], perron_density(s, p, tt, tol)};
           }));
  return single(std::move(t), PlotSpec{"spectral density", "t", {"rho"}, "", false, false});
}

Output cmd_selftest(const Options& opt) {
  SuiteLevel level;
  if (opt.level == "quick")
    level = SuiteLevel::quick;
  else if (opt.level == "full")
    level = SuiteLevel::full;
  else
    fail(ErrorKind::usage, "--level must be quick or full");
  Table t;
  t.name = "selftest";
  t.add_meta("level", opt.level);
  t.columns = {"id", "name", "status", "measured", "tolerance", "seconds"};
  const auto results = run_acceptance(level, [](const CriterionResult& r) {
    const char* status = r.passed ? "PASS" : (r.observational ? "WARN" : "FAIL");
    std::fprintf(stderr, "[%s] %2d %s (%.1f s): %s\n", status, r.id, r.name.c_str(), r.seconds, r.measured.c_str());
  });
  for (const auto& r : results)
    t.add_row({static_cast<long long>(r.id), r.name, std::string(r.passed ? "pass" : (r.observational ? "warn" : "fail")),
               r.measured, r.tolerance, r.seconds});
  Output o = single(std::move(t));
  o.exit_code = all_passed(results) ? 0 : 3;
  return o;
}

const std::map<std::string, std::function<Output(const Options&)>>& registry() {
  static const std::map<std::string, std::function<Output(const Options&)>> r{
      {"thresholds", cmd_thresholds}, {"raney", cmd_raney},       {"sigma", cmd_sigma},
      {"hessian", cmd_hessian},       {"block", cmd_block},       {"spectrum", cmd_spectrum},
      {"stiff-fit", cmd_stiff_fit},   {"soft", cmd_soft},         {"align", cmd_align},
      {"continue", cmd_continue},     {"rho", cmd_rho},           {"resonant-fit", cmd_resonant_fit},
      {"jacobi", cmd_jacobi},         {"weyl", cmd_weyl},         {"density", cmd_density},
      {"figure", make_figure},        {"selftest", cmd_selftest},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"thresholds", "raney", "sigma",  "hessian",      "block",  "spectrum",
                                              "stiff-fit",  "soft",  "align",  "continue",     "rho",    "resonant-fit",
                                              "jacobi",     "weyl",  "density", "figure",      "selftest"};
  return names;
}

Output run_command(const std::string& name, const Options& opt) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) fail(ErrorKind::usage, "unknown command '" + name + "'");
  return it->second(opt);
}

}  // namespace oneharm::cli
