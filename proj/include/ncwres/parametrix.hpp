#pragma once

// Conformally rescaled Laplace-type operators and their parametrices.

#include "ncwres/symcalc.hpp"

#include <vector>

namespace ncwres {

/// Delta = sum_a h^{-d/2} delta_a h^{d-2} delta_a h^{-d/2}
///         + sum_a (T_a delta_a + 1/2 delta_a(T_a)) + X
struct OperatorSpec {
  int d = 4;
  bool torsion = true;
  bool include_x = false;
  /// h = 1 and T = X = 0: the flat Laplacian.
  bool flat = false;

  /// Throws std::invalid_argument for odd or out-of-range d.
  void validate() const;
  bool has_torsion() const { return torsion && !flat; }
  bool has_x() const { return include_x && !flat; }
};

/// a_2 + a_1 + a_0 with a_2 = h^-2 |xi|^2, a_1 = Y^a xi_a, a_0 = Phi.
Symbol laplace_symbol(const OperatorSpec& spec);
/// The same operator assembled by composing multiplication and derivation
/// symbols; an independent route used for cross-checks.
Symbol laplace_symbol_by_composition(const OperatorSpec& spec);

/// c |xi|^2 -> c^-1 |xi|^-2 for a unit word c (letters h, h^-1 only).
/// Throws std::domain_error("non-invertible principal symbol") otherwise.
Symbol invert_leading(const Symbol& a2);

enum class Side { Left, Right };

struct ParametrixResult {
  /// b[k] is homogeneous of degree -2-k.
  std::vector<Symbol> b;
  /// b o a - 1 (left) or a o b - 1 (right), kept down to degree -n-3.
  Symbol defect;

  Symbol sum() const;
};

/// Left parametrix solves (b o a)_{-k} = 0 for k = 1..n, right parametrix
/// (a o b)_{-k} = 0.  The defect is left empty when with_defect is false.
ParametrixResult parametrix_terms(const Symbol& a, int n, Side side = Side::Left, bool with_defect = true);

/// Literal closed forms b_1 = -(b0 a1 b0 + d_k(b0) delta_k(a2) b0) and the
/// five-term b_2, evaluated with pointwise products only.
Symbol closed_form_b1(const Symbol& a);
Symbol closed_form_b2(const Symbol& a);
Symbol closed_form_b2(const OperatorSpec& spec);

}  // namespace ncwres
