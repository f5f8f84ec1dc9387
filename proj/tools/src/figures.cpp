#include <cmath>
#include <functional>
#include <limits>

#include "oneharm/continuation.hpp"
#include "oneharm/error.hpp"
#include "oneharm/gram.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/spectra.hpp"
#include "oneharm_cli/commands.hpp"
#include "oneharm_cli/grid.hpp"

namespace oneharm::cli {
namespace {

constexpr double snapshot_ratio = 0.9999;

std::vector<int> figure_orders(const Options& opt) {
  if (!opt.s) return {3, 5};
  auto v = parse_int_range(*opt.s);
  for (int s : v) validate_order(s);
  return v;
}

std::vector<double> figure_grid(const Options& opt, const char* fallback) {
  if (opt.zeta_ratio) return {*opt.zeta_ratio};
  return expand(parse_grid(opt.grid.value_or(fallback)), GridAxis::approach_one);
}

std::vector<std::string> numbered(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int k = from; k <= to; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

// Grid sweep over (order, ratio) pairs, rows kept in (order, ratio) order.
std::vector<std::vector<Cell>> sweep_pairs(const std::vector<int>& orders, const std::vector<double>& ratios,
                                           const std::function<std::vector<Cell>(int, double)>& row) {
  std::vector<std::vector<Cell>> rows(orders.size() * ratios.size());
  parallel_for(rows.size(), default_threads(), [&](std::size_t i) {
    rows[i] = row(orders[i / ratios.size()], ratios[i % ratios.size()]);
  });
  return rows;
}

void describe(Table& t, const std::string& id, const BlockParams& bp, const std::string& grid) {
  t.add_meta("figure", id);
  t.add_meta("q", std::to_string(bp.q));
  t.add_meta("beta", format_double(bp.beta));
  t.add_meta("N", std::to_string(bp.n));
  t.add_meta("zeta_grid", grid);
}

Output fig1(const Options& opt) {
  const auto orders = figure_orders(opt);
  const BlockParams base{0, opt.q.value_or(1), opt.beta.value_or(1.0), opt.n.value_or(30)};
  const char* grid_text = "0.9:0.99999:25,log";
  const auto ratios = figure_grid(opt, grid_text);
  const int k = std::min(6, base.n);
  Table t;
  t.name = "fig1";
  describe(t, "fig1", base, opt.grid.value_or(grid_text));
  t.columns = {"s", "q", "beta", "N", "zeta_ratio", "L"};
  for (auto& c : numbered("mu", 1, k)) t.columns.push_back(c);
  for (auto& row : sweep_pairs(orders, ratios, [&](int s, double eta) -> std::vector<Cell> {
         BlockParams bp = base;
         bp.s = s;
         const auto bs = block_spectrum(bp, eta);
         std::vector<Cell> r{static_cast<long long>(s), static_cast<long long>(bp.q), bp.beta,
                             static_cast<long long>(bp.n), eta, bs.L};
         for (int j = 0; j < k; ++j) r.push_back(bs.eig.values[j]);
         return r;
       }))
    t.add_row(std::move(row));

  // Tail fit (the dashed line of the stiff panel) over the part of the grid above 0.99.
  Table fit;
  fit.name = "fig1_fit";
  describe(fit, "fig1", base, opt.grid.value_or(grid_text));
  fit.columns = {"s", "slope", "intercept", "gamma_truncated", "gamma_analytic", "residual"};
  std::vector<double> tail;
  for (double eta : ratios)
    if (eta >= 0.99) tail.push_back(eta);
  if (tail.size() < 2) tail = ratios;
  for (int s : orders) {
    BlockParams bp = base;
    bp.s = s;
    const auto sf = stiff_trajectory(bp, tail);
    fit.add_row({static_cast<long long>(s), sf.slope, sf.intercept, sf.gamma_truncated,
                 spike_vector(s, bp.q, bp.beta, bp.n).gamma_analytic, sf.residual});
  }
  Output o;
  o.panels.push_back({std::move(t), PlotSpec{"stiff eigenvalue against L", "L", {"mu1"}, "s", false, false}});
  o.panels.push_back({std::move(fit), std::nullopt});
  return o;
}

Output fig2(const Options& opt) {
  const auto orders = figure_orders(opt);
  const BlockParams base{0, opt.q.value_or(1), opt.beta.value_or(1.0), opt.n.value_or(40)};
  const char* grid_text = "0.99:0.99999:13,log";
  const auto ratios = figure_grid(opt, grid_text);
  const int k = std::min(6, base.n);
  Table top;
  top.name = "fig2";
  describe(top, "fig2", base, opt.grid.value_or(grid_text));
  top.columns = {"s", "zeta_ratio", "inv_L"};
  for (auto& c : numbered("mu", 2, k)) top.columns.push_back(c);
  for (auto& row : sweep_pairs(orders, ratios, [&](int s, double eta) -> std::vector<Cell> {
         BlockParams bp = base;
         bp.s = s;
         const auto bs = block_spectrum(bp, eta);
         std::vector<Cell> r{static_cast<long long>(s), eta, 1.0 / bs.L};
         for (int j = 1; j < k; ++j) r.push_back(bs.eig.values[j]);
         return r;
       }))
    top.add_row(std::move(row));

  // Snapshot at zeta/zeta_c = 0.9999 across all sectors.
  Table snap;
  snap.name = "fig2_snapshot";
  describe(snap, "fig2", base, "snapshot 0.9999");
  snap.columns = {"s", "q", "k", "mu", "compressed"};
  for (int s : orders)
    for (int q = 1; q <= s; ++q) {
      BlockParams bp = base;
      bp.s = s;
      bp.q = q;
      const auto ss = soft_spectrum(bp, snapshot_ratio, k);
      for (std::size_t j = 0; j < ss.mu.size(); ++j)
        snap.add_row({static_cast<long long>(s), static_cast<long long>(q), static_cast<long long>(j + 2), ss.mu[j],
                      j < ss.compressed.size() ? ss.compressed[j] : std::nan("")});
    }
  Output o;
  o.panels.push_back({std::move(top), PlotSpec{"soft branches against 1/L", "inv_L", numbered("mu", 2, k), "s", false,
                                               true}});
  o.panels.push_back({std::move(snap), PlotSpec{"soft snapshot at 0.9999", "k", {"mu"}, "q", false, true}});
  return o;
}

Output fig3(const Options& opt) {
  const auto orders = figure_orders(opt);
  std::vector<int> ps{1, 2, 3, 4, 5, 6};
  if (opt.p) ps = {*opt.p};
  const auto sub = linspace(0.02, 0.995, 40);
  const auto super = geomspace(1.001, 20.0, 40);
  ContinuationOptions co;
  co.tol = opt.tol.value_or(1e-12);
  Table t;
  t.name = "fig3";
  t.add_meta("figure", "fig3");
  t.add_meta("xi_grid_sub", "linspace(0.02, 0.995, 40)");
  t.add_meta("xi_grid_super", "geomspace(1.001, 20, 40)");
  t.add_meta("xi", "u / zeta_c^2");
  t.columns = {"s", "p", "u", "xi", "sigma_cont", "rho", "edge_value"};
  struct Job {
    int s, p;
    double xi;
  };
  std::vector<Job> jobs;
  for (int s : orders)
    for (int p : ps) {
      for (double xi : sub) jobs.push_back({s, p, xi});
      for (double xi : super) jobs.push_back({s, p, xi});
    }
  std::vector<std::vector<Cell>> rows(jobs.size());
  parallel_for(jobs.size(), default_threads(), [&](std::size_t i) {
    const auto [s, p, xi] = jobs[i];
    const double zc2 = zeta_c(s) * zeta_c(s), u = xi * zc2;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double sigma = nan, rho = nan;
    if (xi < 1.0)
      sigma = sigma_cont(s, p, u, Side::none, co).real();
    else
      rho = disc_density(s, p, u, co).rho;
    rows[i] = {static_cast<long long>(s), static_cast<long long>(p), u, xi, sigma, rho, edge_density_closed(s, p)};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  Output o;
  o.panels.push_back({std::move(t), PlotSpec{"continued Gram weight and discontinuity density", "xi",
                                             {"sigma_cont", "rho"}, "p", true, false}});
  return o;
}

Output fig4(const Options& opt) {
  const auto orders = figure_orders(opt);
  const BlockParams base{0, opt.q.value_or(1), opt.beta.value_or(1.0), opt.n.value_or(40)};
  const double eta = opt.zeta_ratio.value_or(snapshot_ratio);
  Table t;
  t.name = "fig4";
  describe(t, "fig4", base, format_double(eta));
  t.add_meta("vectors", "eigenvectors of the remainder compressed to the spike complement");
  t.columns = {"s", "j", "p_j", "phi2", "phi3", "phi4", "phi5", "nodes2", "nodes3", "nodes4", "nodes5"};
  for (int s : orders) {
    BlockParams bp = base;
    bp.s = s;
    const auto ss = soft_spectrum(bp, eta, 5);
    require(ss.compressed_vectors.size() >= 4, ErrorKind::validation, "fig4 needs N >= 5");
    std::vector<long long> nodes;
    for (int k = 0; k < 4; ++k) nodes.push_back(nodal_count(ss.compressed_vectors[k]));
    for (int j = 0; j < bp.n; ++j) {
      std::vector<Cell> r{static_cast<long long>(s), static_cast<long long>(j), block_index(s, bp.q, j)};
      for (int k = 0; k < 4; ++k) r.push_back(ss.compressed_vectors[k][j]);
      for (long long c : nodes) r.push_back(c);
      t.add_row(std::move(r));
    }
  }
  Output o;
  o.panels.push_back({std::move(t), PlotSpec{"first soft modes", "p_j", {"phi2", "phi3", "phi4", "phi5"}, "s", false,
                                             false}});
  return o;
}

}  // namespace

Output make_figure(const Options& opt) {
  if (opt.figure == "fig1") return fig1(opt);
  if (opt.figure == "fig2") return fig2(opt);
  if (opt.figure == "fig3") return fig3(opt);
  if (opt.figure == "fig4") return fig4(opt);
  fail(ErrorKind::usage, "--id must be one of fig1, fig2, fig3, fig4");
}

}  // namespace oneharm::cli
