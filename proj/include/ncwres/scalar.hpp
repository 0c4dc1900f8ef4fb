#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace ncwres {

using Rational = mpq_class;

/// Exact scalar q * pi^k.  Inside polynomial coefficients k is always 0;
/// residue outputs carry k = d/2.
struct Scalar {
  Rational q{0};
  int pi_power = 0;

  Scalar() = default;
  Scalar(Rational value, int pi = 0) : q(std::move(value)), pi_power(pi) {
    q.canonicalize();
  }

  bool is_zero() const { return q == 0; }
  double to_double() const;

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.q * b.q, a.pi_power + b.pi_power);
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.q == b.q && a.pi_power == b.pi_power;
  }
};

Rational make_rational(long num, long den = 1);

/// "3/4", "-2", "0".
std::string to_string(const Rational& q);
/// "3/4*pi^2", "pi^2", "-2".
std::string to_string(const Scalar& s);

/// Exact int64 view; throws std::overflow_error if it does not fit.
long to_int64(const mpz_class& z);

}  // namespace ncwres
