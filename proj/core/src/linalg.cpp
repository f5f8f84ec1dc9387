#include "oneharm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oneharm/error.hpp"

namespace oneharm {

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::fabs(x));
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

void SymMatrix::add_outer(const std::vector<double>& v, double scale) {
  for (std::size_t i = 0; i < n_; ++i) {
    const double vi = scale * v[i];
    double* row = &a_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) row[j] += vi * v[j];
  }
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require(a.size() == b.size(), ErrorKind::validation, "matrix size mismatch");
  SymMatrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double norm(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

std::vector<double> multiply(const SymMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

namespace {

void check_symmetric(const SymMatrix& a) {
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!std::isfinite(a(i, j)) || !std::isfinite(a(j, i)))
        fail(ErrorKind::validation, "matrix has non-finite entries");
      if (std::fabs(a(i, j) - a(j, i)) > 1e-12 * scale)
        fail(ErrorKind::validation, "matrix is not symmetric");
    }
}

// Orders pairs by descending value and fixes the sign of each vector.
EigenDecomposition finish(std::vector<double> d, const std::vector<std::vector<double>>& cols) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
  EigenDecomposition out;
  for (std::size_t k : order) {
    auto v = cols[k];
    double big = 0.0;
    for (double x : v) big = std::max(big, std::fabs(x));
    for (double x : v) {
      if (std::fabs(x) > 1e-12 * big) {
        if (x < 0)
          for (double& y : v) y = -y;
        break;
      }
    }
    out.values.push_back(d[k]);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& a) {
  check_symmetric(a);
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  std::vector<std::vector<double>> V(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) V[i][j] = 0.5 * (a(i, j) + a(j, i));
  std::vector<double> d(n), e(n);

  // Householder reduction to tridiagonal form.
  for (int j = 0; j < n; ++j) d[j] = V[n - 1][j];
  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = V[i - 1][j];
        V[i][j] = 0.0;
        V[j][i] = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;
      for (int j = 0; j < i; ++j) {
        f = d[j];
        V[j][i] = f;
        g = e[j] + V[j][j] * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V[k][j] * d[k];
          e[k] += V[k][j] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) V[k][j] -= (f * e[k] + g * d[k]);
        d[j] = V[i - 1][j];
        V[i][j] = 0.0;
      }
    }
    d[i] = h;
  }
  for (int i = 0; i < n - 1; ++i) {
    V[n - 1][i] = V[i][i];
    V[i][i] = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = V[k][i + 1] / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += V[k][i + 1] * V[k][j];
        for (int k = 0; k <= i; ++k) V[k][j] -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) V[k][i + 1] = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = V[n - 1][j];
    V[n - 1][j] = 0.0;
  }
  V[n - 1][n - 1] = 1.0;
  e[0] = 0.0;

  // Implicit QL on the tridiagonal matrix.
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double f = 0.0, tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    int m = l;
    while (m < n) {
      if (std::fabs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 200) fail(ErrorKind::iteration, "QL iteration did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = V[k][i + 1];
            V[k][i + 1] = s * V[k][i] + c * h;
            V[k][i] = c * V[k][i] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) cols[k][i] = V[i][k];
  return finish(std::move(d), cols);
}

EigenDecomposition jacobi_eig(const SymMatrix& a) {
  check_symmetric(a);
  const std::size_t n = a.size();
  SymMatrix m = a;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off <= 1e-30 * std::max(1e-300, m.frobenius() * m.frobenius())) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<double> d(n);
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = m(k, k);
    for (std::size_t i = 0; i < n; ++i) cols[k][i] = v[i][k];
  }
  return finish(std::move(d), cols);
}

double operator_norm(const SymMatrix& a) {
  const auto e = sym_eig(a);
  if (e.values.empty()) return 0.0;
  return std::max(std::fabs(e.values.front()), std::fabs(e.values.back()));
}

}  // namespace oneharm
