#include "oneharm/exact.hpp"

#include <cmath>

#include "oneharm/error.hpp"

namespace oneharm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::branch_ambiguity: return "branch_ambiguity";
    case ErrorKind::iteration: return "iteration";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::path: return "path";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::validation: return "validation";
    case ErrorKind::fit: return "fit";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

double log_abs(const BigInt& x) {
  require(sgn(x) != 0, ErrorKind::domain, "log of zero");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const Rational& x) {
  return log_abs(BigInt(x.get_num())) - log_abs(BigInt(x.get_den()));
}

Rational exact_rational(double x) {
  require(std::isfinite(x), ErrorKind::domain, "non-finite value has no rational form");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace oneharm
