#pragma once

// Wodzicki residue: the degree -d component integrated over S^{d-1} inside
// the canonical trace.

#include "ncwres/parametrix.hpp"
#include "ncwres/trace.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace ncwres {

/// Exact moment of xi^alpha over the unit sphere S^{d-1}, as q * pi^(d/2).
/// Zero when any exponent is odd.  Requires even d.
Scalar sphere_integral(const MultiIndex& alpha, int d);

/// Total volume of S^{d-1}.
inline Scalar sphere_volume(int d) { return sphere_integral(MultiIndex{}, d); }

/// Sphere moments for one dimension.  A table can carry injected faults for
/// exercising the verification path.
class SphereIntegralTable {
 public:
  explicit SphereIntegralTable(int d);

  int dim() const { return d_; }
  Scalar operator()(const MultiIndex& alpha) const;

  /// Multiply the moment of alpha by factor (test mode only).
  SphereIntegralTable with_fault(const MultiIndex& alpha, const Rational& factor) const;

 private:
  int d_;
  std::map<MultiIndex, Rational> faults_;
};

/// Monte Carlo estimate of the sphere moments (normalized Gaussian samples
/// averaged over coordinate permutations).  Samples are drawn in fixed
/// chunks with per-chunk seeds, so the result does not depend on the thread
/// count.
double sphere_moment_monte_carlo(const MultiIndex& alpha, int d, std::uint64_t samples, std::uint64_t seed);
double sphere_moment_monte_carlo_serial(const MultiIndex& alpha, int d, std::uint64_t samples,
                                        std::uint64_t seed);

/// Canonical trace expression (cyclicity + IBP) of the residue.
TraceExpression wodzicki_residue(const Symbol& s, const SphereIntegralTable& table);
TraceExpression wodzicki_residue(const Symbol& s);
/// Same integration without the IBP reduction.
TraceExpression wodzicki_residue_raw(const Symbol& s, const SphereIntegralTable& table);

/// Wres(Delta^-power) for power 1 or 2, using the parametrix up to order n.
TraceExpression wres_inverse_power(const OperatorSpec& spec, int power, int n, Side side = Side::Left);

/// (Wres(PQ), Wres(QP)).
std::pair<TraceExpression, TraceExpression> trace_property_probe(const Symbol& p, const Symbol& q,
                                                                 const SphereIntegralTable& table);
std::pair<TraceExpression, TraceExpression> trace_property_probe(const Symbol& p, const Symbol& q, int d);

/// Integral over S^{d-1} of d/dxi_i applied to xi_j |xi|^(rho-1).  rho - 1
/// must be even.
Scalar sphere_derivative_lemma_check(int i, int j, int rho, int d);

}  // namespace ncwres
