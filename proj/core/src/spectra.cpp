#include "oneharm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "oneharm/error.hpp"
#include "oneharm/maps.hpp"
#include "oneharm/numerics.hpp"
#include "oneharm/raney.hpp"

namespace oneharm {

double log_scale(double zeta, double zc) {
  require(zc > 0.0 && zeta >= 0.0 && zeta < zc, ErrorKind::domain, "log_scale needs 0 <= zeta < zeta_c");
  return log_scale_ratio(zeta / zc);
}

double log_scale_ratio(double eta) {
  require(eta >= 0.0 && eta < 1.0, ErrorKind::domain, "log_scale needs 0 <= zeta/zeta_c < 1");
  return -std::log1p(-eta * eta);
}

namespace {

struct CachedBlock {
  WeightedBlock block;
  BlockSpectrum spectrum;
};

using CacheKey = std::tuple<int, int, double, int, double>;

std::shared_ptr<const CachedBlock> cached_block(const BlockParams& bp, double eta) {
  require(eta > 0.0 && eta < 1.0, ErrorKind::domain, "zeta/zeta_c must lie in (0, 1)");
  static std::mutex mu;
  static std::map<CacheKey, std::shared_ptr<const CachedBlock>> cache;
  const CacheKey key{bp.s, bp.q, bp.beta, bp.n, eta};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto entry = std::make_shared<CachedBlock>();
  const double zeta = eta * zeta_c(bp.s);
  entry->block = weighted_block(bp.s, zeta, bp.q, bp.beta, bp.n);
  entry->spectrum.eta = eta;
  entry->spectrum.zeta = zeta;
  entry->spectrum.L = log_scale_ratio(eta);
  entry->spectrum.eig = sym_eig(entry->block.matrix);
  std::lock_guard lock(mu);
  if (cache.size() > 512) cache.clear();
  return cache.emplace(key, std::move(entry)).first->second;
}

std::vector<double> unit_spike(const BlockParams& bp) {
  auto d = spike_vector(bp.s, bp.q, bp.beta, bp.n).entries;
  const double nd = norm(d);
  for (double& x : d) x /= nd;
  return d;
}

}  // namespace

BlockSpectrum block_spectrum(const BlockParams& bp, double eta) { return cached_block(bp, eta)->spectrum; }

StiffFit stiff_trajectory(const BlockParams& bp, const std::vector<double>& eta_grid) {
  require(bp.n >= 2, ErrorKind::domain, "truncation N must be >= 2");
  if (eta_grid.size() < 2) fail(ErrorKind::fit, "stiff fit needs at least two grid points");
  StiffFit fit;
  fit.gamma_truncated = spike_vector(bp.s, bp.q, bp.beta, bp.n).gamma_truncated;
  std::vector<double> mu(eta_grid.size()), ls(eta_grid.size());
  parallel_for(eta_grid.size(), default_threads(), [&](std::size_t i) {
    const auto bs = cached_block(bp, eta_grid[i]);
    mu[i] = bs->spectrum.eig.values.front();
    ls[i] = bs->spectrum.L;
  });
  fit.L_values = ls;
  fit.mu1 = mu;
  const auto [lmin, lmax] = std::minmax_element(ls.begin(), ls.end());
  const double mid = 0.5 * (*lmin + *lmax);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] >= mid) {
      x.push_back(ls[i]);
      y.push_back(mu[i]);
    }
  if (x.size() < 2) fail(ErrorKind::fit, "fewer than two points in the upper half of the L-range");
  const auto lf = fit_line(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  fit.residual = *ymax > *ymin ? lf.rms / (*ymax - *ymin) : 0.0;
  fit.fitted = x.size();
  return fit;
}

Alignment eigvec_alignment(const BlockParams& bp, double eta) {
  const auto bs = cached_block(bp, eta);
  const auto& eig = bs->spectrum.eig;
  Alignment a;
  a.value = std::min(1.0, std::fabs(dot(eig.vectors.front(), unit_spike(bp))));
  a.degenerate = eig.values.size() > 1 && eig.values[0] - eig.values[1] < 1e-10 * std::fabs(eig.values[0]);
  return a;
}

SoftSpectrum soft_spectrum(const BlockParams& bp, double eta, int k) {
  require(k >= 2 && k <= bp.n, ErrorKind::domain, "soft spectrum needs 2 <= k <= N");
  const auto bs = cached_block(bp, eta);
  SoftSpectrum out;
  for (int i = 1; i < k; ++i) out.mu.push_back(bs->spectrum.eig.values[i]);

  const auto c = rank_one_remainder(bp, eta);
  const int n = bp.n;
  // Householder reflector H with H d_hat = -e_0; rows/cols 1.. of H C H span the complement.
  auto u = unit_spike(bp);
  u[0] += 1.0;
  const double unorm2 = dot(u, u);
  auto reflect = [&](std::vector<double> x) {
    const double f = 2.0 * dot(u, x) / unorm2;
    for (int i = 0; i < n; ++i) x[i] -= f * u[i];
    return x;
  };
  std::vector<std::vector<double>> hc(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = c(i, j);
    hc[j] = reflect(col);  // column j of H C
  }
  SymMatrix inner(n - 1);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = hc[j][i];  // row i of H C
    const auto r = reflect(row);                     // row i of H C H
    if (i == 0) continue;
    for (int j = 1; j < n; ++j) inner(i - 1, j - 1) = r[j];
  }
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < i; ++j) inner(i, j) = inner(j, i) = 0.5 * (inner(i, j) + inner(j, i));
  const auto eig = sym_eig(inner);
  out.compressed = eig.values;
  for (const auto& y : eig.vectors) {
    std::vector<double> x(n, 0.0);
    for (int i = 1; i < n; ++i) x[i] = y[i - 1];
    x = reflect(x);
    double big = 0.0;
    for (double z : x) big = std::max(big, std::fabs(z));
    for (double z : x)
      if (std::fabs(z) > 1e-12 * big) {
        if (z < 0)
          for (double& w : x) w = -w;
        break;
      }
    out.compressed_vectors.push_back(std::move(x));
  }
  return out;
}

std::vector<ToeplitzPoint> toeplitz_removal_check(const BlockParams& bp, const std::vector<double>& eta_grid) {
  const auto d = spike_vector(bp.s, bp.q, bp.beta, bp.n).entries;
  const std::size_t n = d.size();
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = d[i] * d[i];
  // b[delta] = sum_i d_i^2 d_{i+delta}^2
  std::vector<long double> b(n, 0.0L);
  for (std::size_t delta = 1; delta < n; ++delta) {
    long double acc = 0.0L;
    for (std::size_t i = n - delta; i-- > 0;) acc += static_cast<long double>(d2[i]) * d2[i + delta];
    b[delta] = acc;
  }
  std::vector<ToeplitzPoint> out;
  for (double eta : eta_grid) {
    require(eta > 0.0 && eta <= 1.0, ErrorKind::domain, "eta must lie in (0, 1]");
    ToeplitzPoint tp;
    tp.eta = eta;
    if (eta < 1.0) {
      tp.L = log_scale_ratio(eta);
      const double le = std::log(eta);
      long double hs2 = 0.0L;
      for (std::size_t delta = n - 1; delta >= 1; --delta) {
        const double f = -std::expm1(static_cast<double>(delta) * le);
        hs2 += 2.0L * f * f * b[delta];
      }
      tp.hs = std::sqrt(static_cast<double>(hs2));
    } else {
      tp.L = std::numeric_limits<double>::infinity();
    }
    out.push_back(tp);
  }
  return out;
}

SymMatrix rank_one_remainder(const BlockParams& bp, double eta) {
  const auto bs = cached_block(bp, eta);
  SymMatrix c = bs->block.matrix;
  c.add_outer(spike_vector(bp.s, bp.q, bp.beta, bp.n).entries, -bs->spectrum.L);
  return c;
}

int nodal_count(const std::vector<double>& v) {
  double big = 0.0;
  for (double x : v) big = std::max(big, std::fabs(x));
  require(big > 0.0, ErrorKind::domain, "nodal_count of a zero vector");
  int changes = 0, last = 0;
  for (double x : v) {
    if (std::fabs(x) < 1e-12 * big) continue;
    const int sgn = x > 0 ? 1 : -1;
    if (last != 0 && sgn != last) ++changes;
    last = sgn;
  }
  return changes;
}

IsospectralCheck isospectral_check(const BlockParams& bp, double eta, int rows) {
  require(rows >= bp.n, ErrorKind::domain, "need at least N rows");
  require(eta > 0.0 && eta < 1.0, ErrorKind::domain, "zeta/zeta_c must lie in (0, 1)");
  const int n = bp.n, s = bp.s, q = bp.q;
  std::vector<std::vector<double>> v(rows, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    const double pj = block_index(s, q, j);
    long double g = 1.0L / (static_cast<long double>(block_weight(s, q, bp.beta, j)) * std::sqrt(static_cast<long double>(pj)));
    for (int t = j; t < rows; ++t) {
      v[t][j] = static_cast<double>((q + static_cast<long double>(t) * s) * g);
      g *= scaled_raney_ratio(s, static_cast<int>(pj), t - j) * eta;
    }
  }
  SymMatrix gram(n), outer(rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long double acc = 0.0L;
      for (int t = 0; t < rows; ++t) acc += static_cast<long double>(v[t][i]) * v[t][j];
      gram(i, j) = static_cast<double>(acc);
    }
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < rows; ++b) {
      long double acc = 0.0L;
      for (int j = 0; j < n; ++j) acc += static_cast<long double>(v[a][j]) * v[b][j];
      outer(a, b) = static_cast<double>(acc);
    }
  IsospectralCheck out;
  out.gram_side = sym_eig(gram).values;
  auto full = sym_eig(outer).values;
  full.resize(n);
  out.outer_side = full;
  const double top = out.gram_side.front();
  for (int k = 0; k < n; ++k) {
    if (out.gram_side[k] < 1e-7 * top) break;
    out.max_rel_diff = std::max(out.max_rel_diff, std::fabs(out.gram_side[k] - out.outer_side[k]) / out.gram_side[k]);
  }
  return out;
}

}  // namespace oneharm
