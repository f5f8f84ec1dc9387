#pragma once

#include <gmpxx.h>

#include <string>

namespace oneharm {

using BigInt = mpz_class;
using Rational = mpq_class;

Rational rational_pow(const Rational& base, unsigned exponent);
BigInt binomial(unsigned long n, unsigned long k);

// Natural log of |x|, finite for any nonzero x regardless of size.
double log_abs(const BigInt& x);
double log_abs(const Rational& x);

// Exact binary value of a finite double.
Rational exact_rational(double x);

std::string to_string(const Rational& x);

}  // namespace oneharm
