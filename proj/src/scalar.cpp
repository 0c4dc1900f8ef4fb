#include "ncwres/scalar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncwres {

double Scalar::to_double() const {
  return q.get_d() * std::pow(std::numbers::pi, pi_power);
}

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Scalar& s) {
  if (s.is_zero() || s.pi_power == 0) return to_string(s.q);
  std::string pi = s.pi_power == 1 ? "pi" : "pi^" + std::to_string(s.pi_power);
  if (s.q == 1) return pi;
  if (s.q == -1) return "-" + pi;
  return to_string(s.q) + "*" + pi;
}

long to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace ncwres
