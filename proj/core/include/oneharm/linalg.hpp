#pragma once

#include <cstddef>
#include <vector>

namespace oneharm {

// Dense square matrix, row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  double max_abs() const;
  double frobenius() const;
  void add_outer(const std::vector<double>& v, double scale = 1.0);

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Householder tridiagonalization followed by implicit QL; first non-negligible component of
// each eigenvector is made positive.
EigenDecomposition sym_eig(const SymMatrix& a);

// Cyclic Jacobi rotations; slow, used as an independent check.
EigenDecomposition jacobi_eig(const SymMatrix& a);

double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm(const std::vector<double>& x);
std::vector<double> multiply(const SymMatrix& a, const std::vector<double>& x);

// Largest |eigenvalue|.
double operator_norm(const SymMatrix& a);

}  // namespace oneharm
