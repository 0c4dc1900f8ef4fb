#pragma once

// Structural analyses of the residues: shape decomposition, the commutative
// limit and the torsion (minimality) report.

#include "ncwres/wres.hpp"

#include <string>
#include <vector>

namespace ncwres {

/// target == sum_i coefficients[i] * shapes[i] modulo cyclicity and IBP.
struct ShapeFit {
  bool in_span = false;
  std::vector<Rational> coefficients;
  /// Reduced remainder of the best fit; zero iff in_span.
  TraceExpression residual;
};

/// All expressions are reduced against one shared relation system, so the
/// fit does not depend on the order of reduction.  pi powers must match
/// between target and shapes.
ShapeFit fit_shapes(const TraceExpression& target, const std::vector<TraceExpression>& shapes);

/// sum_a t(h^2 T_a h^2 T_a h^2), sum_a t(h^2 [T_a, delta_a(h^2)]) and
/// sum_a t(delta_a(h^2) h^-2 delta_a(h^2)), each times 2 pi^2.
std::vector<TraceExpression> torsion_shapes(int d = 4);
std::vector<std::string> torsion_shape_names();

struct StructureReport {
  TraceExpression residue;
  ShapeFit fit;
  /// Coefficients printed alongside the published residue formula.
  std::vector<Rational> printed_coefficients;
  /// Per shape: computed coefficient equals the printed one.
  std::vector<bool> printed_matches;
};

/// Decomposes Wres(Delta^-1) for d = 4 into the three torsion shapes.
StructureReport inverse_residue_structure(const OperatorSpec& spec, Side side = Side::Left);

struct CommutativeLimit {
  TraceExpression residue;
  /// -2 pi^2 sum_a t(delta_a(h) delta_a(h)).
  TraceExpression gradient_form;
  /// 2 pi^2 (1/6) t(h^4 * 6 h^-3 sum_a delta_aa(h)).
  TraceExpression curvature_form;
  bool residue_matches_gradient = false;
  bool gradient_matches_curvature = false;
  /// Commutative image of the torsion-shape decomposition (T present).
  bool torsion_image_matches = false;
};

/// Commutative checks at d = 4.
CommutativeLimit commutative_limit_check(Side side = Side::Left);

struct MinimalityReport {
  TraceExpression linear;     // terms with one torsion letter
  TraceExpression quadratic;  // terms with two torsion letters
  TraceExpression commutative_linear;
  TraceExpression commutative_quadratic;
  /// The residue depends on T_a, so T_a = 0 is not singled out by the metric.
  bool torsion_dependent = false;
};

MinimalityReport minimality_report(Side side = Side::Left);

}  // namespace ncwres
