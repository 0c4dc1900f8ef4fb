#include "ncwres/wres.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace ncwres {

namespace {

void check_even_dim(int d) {
  if (d < 2 || d > kMaxDim || d % 2 != 0) throw std::invalid_argument("sphere moments need even d in 2..8");
}

}  // namespace

Scalar sphere_integral(const MultiIndex& alpha, int d) {
  check_even_dim(d);
  // 2 prod Gamma((a_i+1)/2) / Gamma((|a|+d)/2) with a_i = 2k_i:
  // Gamma(k+1/2) = (2k-1)!! / 2^k sqrt(pi), Gamma(|k| + d/2) = (|k|+d/2-1)!
  Rational value = 2;
  int k_total = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    if (i >= d && alpha[i] != 0) throw std::invalid_argument("moment index beyond dimension");
    if (alpha[i] % 2 != 0) return Scalar(0, d / 2);
    const int k = alpha[i] / 2;
    k_total += k;
    mpz_class dfact = 1;
    for (int m = 2 * k - 1; m > 1; m -= 2) dfact *= m;
    value *= Rational(dfact, mpz_class(1) << k);
  }
  mpz_class fact = 1;
  for (int m = 2; m <= k_total + d / 2 - 1; ++m) fact *= m;
  value /= fact;
  return Scalar(value, d / 2);
}

SphereIntegralTable::SphereIntegralTable(int d) : d_(d) { check_even_dim(d); }

Scalar SphereIntegralTable::operator()(const MultiIndex& alpha) const {
  Scalar v = sphere_integral(alpha, d_);
  if (auto it = faults_.find(alpha); it != faults_.end()) v.q *= it->second;
  return v;
}

SphereIntegralTable SphereIntegralTable::with_fault(const MultiIndex& alpha, const Rational& factor) const {
  SphereIntegralTable t = *this;
  t.faults_[alpha] = factor;
  return t;
}

namespace {

constexpr std::uint64_t kChunk = 4096;

/// Sum over one chunk of the permutation-averaged monomial on S^{d-1}.
double chunk_sum(const MultiIndex& alpha, int d, std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::array<double, kMaxDim> x{};
  double sum = 0;
  for (std::uint64_t s = 0; s < count; ++s) {
    double norm2 = 0;
    for (int i = 0; i < d; ++i) {
      x[i] = normal(rng);
      norm2 += x[i] * x[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) x[i] *= inv;
    // average over cyclic shifts of the coordinates (exact symmetry of the
    // sphere measure, reduces variance)
    double acc = 0;
    for (int shift = 0; shift < d; ++shift) {
      double v = 1;
      for (int i = 0; i < d; ++i) v *= std::pow(x[(i + shift) % d], alpha[i]);
      acc += v;
    }
    sum += acc / d;
  }
  return sum;
}

double volume_double(int d) { return sphere_volume(d).to_double(); }

}  // namespace

double sphere_moment_monte_carlo(const MultiIndex& alpha, int d, std::uint64_t samples, std::uint64_t seed) {
  check_even_dim(d);
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks, 0.0);
  const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const std::uint64_t count = std::min(kChunk, samples - uc * kChunk);
    sums[uc] = chunk_sum(alpha, d, count, seed + uc);
  }
  double total = 0;
  for (double s : sums) total += s;
  return volume_double(d) * total / static_cast<double>(samples);
}

double sphere_moment_monte_carlo_serial(const MultiIndex& alpha, int d, std::uint64_t samples,
                                        std::uint64_t seed) {
  check_even_dim(d);
  double total = 0;
  for (std::uint64_t c = 0; c * kChunk < samples; ++c) {
    total += chunk_sum(alpha, d, std::min(kChunk, samples - c * kChunk), seed + c);
  }
  return volume_double(d) * total / static_cast<double>(samples);
}

TraceExpression wodzicki_residue_raw(const Symbol& s, const SphereIntegralTable& table) {
  const int d = s.dim();
  if (table.dim() != d) throw std::invalid_argument("sphere table dimension mismatch");
  TraceExpression e;
  auto it = s.components().find(-d);
  if (it == s.components().end()) return e;
  for (const auto& [xi, c] : it->second) {
    const Scalar moment = table(xi.alpha);
    if (moment.is_zero()) continue;
    e += TraceExpression::trace_of(c, moment);
  }
  return e;
}

TraceExpression wodzicki_residue(const Symbol& s, const SphereIntegralTable& table) {
  return ibp_reduce(wodzicki_residue_raw(s, table));
}

TraceExpression wodzicki_residue(const Symbol& s) { return wodzicki_residue(s, SphereIntegralTable(s.dim())); }

TraceExpression wres_inverse_power(const OperatorSpec& spec, int power, int n, Side side) {
  spec.validate();
  if (power != 1 && power != 2) throw std::invalid_argument("power must be 1 or 2");
  const int d = spec.d;
  const int needed = power == 1 ? d - 2 : std::max(0, d - 4);
  if (n < needed) {
    throw std::invalid_argument("parametrix order " + std::to_string(n) + " too small; need at least " +
                                std::to_string(needed));
  }
  const auto pr = parametrix_terms(laplace_symbol(spec), n, side, false);
  const Symbol b = pr.sum();
  if (power == 1) return wodzicki_residue(b);
  return wodzicki_residue(symbol_product(b, b, -d - 1));
}

std::pair<TraceExpression, TraceExpression> trace_property_probe(const Symbol& p, const Symbol& q,
                                                                 const SphereIntegralTable& table) {
  const int d = p.dim();
  return {wodzicki_residue(symbol_product(p, q, -d), table), wodzicki_residue(symbol_product(q, p, -d), table)};
}

std::pair<TraceExpression, TraceExpression> trace_property_probe(const Symbol& p, const Symbol& q, int d) {
  return trace_property_probe(p, q, SphereIntegralTable(d));
}

Scalar sphere_derivative_lemma_check(int i, int j, int rho, int d) {
  if ((rho - 1) % 2 != 0) throw std::invalid_argument("rho - 1 must be even for an in-ring representative");
  XiMonomial xi;
  xi.alpha[j - 1] = 1;
  xi.m = (rho - 1) / 2;
  const Symbol f = Symbol::term(NCPoly::one(), xi, d);
  const Symbol df = partial_xi(f, i);
  Rational total = 0;
  for (const auto& [k, comp] : df.components()) {
    for (const auto& [mono, c] : comp) {
      // constant coefficient: c is a multiple of the unit word
      total += c.terms().at(Word{}) * sphere_integral(mono.alpha, d).q;
    }
  }
  return Scalar(total, d / 2);
}

}  // namespace ncwres
