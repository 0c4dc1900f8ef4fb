#pragma once

// Graded xi-symbols with noncommutative coefficients and the composition
// formula  rho(PQ) = sum_gamma 1/gamma! d_xi^gamma rho(P) delta^gamma rho(Q).

#include "ncwres/ncalg.hpp"

#include <compare>
#include <map>
#include <string>

namespace ncwres {

/// xi^alpha |xi|^(2m).  (alpha, m) is a free representation: the relation
/// |xi|^2 = sum_a xi_a^2 is not applied.
struct XiMonomial {
  MultiIndex alpha{};
  int m = 0;

  int degree() const { return total_order(alpha) + 2 * m; }
  auto operator<=>(const XiMonomial&) const = default;
};

class Symbol {
 public:
  using Component = std::map<XiMonomial, NCPoly>;
  using Components = std::map<int, Component>;

  explicit Symbol(int d = 4);
  static Symbol one(int d) { return constant(NCPoly::one(), d); }
  static Symbol constant(const NCPoly& c, int d) { return term(c, XiMonomial{}, d); }
  static Symbol term(const NCPoly& c, const XiMonomial& xi, int d);

  int dim() const { return d_; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }
  /// Highest/lowest degree present; only meaningful when non-zero.
  int max_degree() const { return components_.rbegin()->first; }
  int min_degree() const { return components_.begin()->first; }
  std::size_t term_count() const;

  void add_term(const NCPoly& c, const XiMonomial& xi);

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(const Rational& c);
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator-(Symbol a) { return a *= Rational(-1); }
  friend Symbol operator*(const Rational& c, Symbol a) { return a *= c; }
  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  int d_;
  Components components_;
};

/// d/d xi_axis; every term's degree drops by one.
Symbol partial_xi(const Symbol& s, int axis);
Symbol partial_xi(const Symbol& s, const MultiIndex& gamma);
/// delta_axis applied to every coefficient.
Symbol derive_coefficients(const Symbol& s, int axis);
Symbol derive_coefficients(const Symbol& s, const MultiIndex& gamma);

/// Composition truncated below min_degree.  Coefficients of P multiply from
/// the left.  The gamma sum runs in parallel with a fixed-order merge.
Symbol symbol_product(const Symbol& p, const Symbol& q, int min_degree);
/// Single-threaded reference for symbol_product.
Symbol symbol_product_serial(const Symbol& p, const Symbol& q, int min_degree);
/// The gamma = 0 term only: coefficients multiply, xi-monomials add.
Symbol pointwise_product(const Symbol& p, const Symbol& q);

Symbol homogeneous_component(const Symbol& s, int k);
/// Replaces sum_a c xi^(beta + 2 e_a) |xi|^(2m) by c xi^beta |xi|^(2m+2)
/// wherever all d terms are present with the same coefficient.  Sound but
/// not a canonical form.
Symbol fold_norm_squares(const Symbol& s);
Symbol map_coefficients(const Symbol& s, NCPoly (*f)(const NCPoly&));

/// 1 / (gamma_1! ... gamma_d!).
Rational inverse_factorial(const MultiIndex& g);

std::string xi_to_string(const XiMonomial& xi, int d);
std::string to_string(const Symbol& s);

}  // namespace ncwres
