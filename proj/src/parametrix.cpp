#include "ncwres/parametrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncwres {

void OperatorSpec::validate() const {
  if (d < 2 || d > kMaxDim || d % 2 != 0) {
    throw std::invalid_argument("dimension must be even and in 2.." + std::to_string(kMaxDim) + ", got " +
                                std::to_string(d));
  }
}

namespace {

NCPoly hp(int k) { return expand_h_power(k); }

NCPoly torsion(int a) { return NCPoly::letter(Letter::t(a)); }

XiMonomial xi_axis(int a) {
  XiMonomial xi;
  xi.alpha[a - 1] = 1;
  return xi;
}

XiMonomial xi_norm(int m) {
  XiMonomial xi;
  xi.m = m;
  return xi;
}

Symbol flatten(const Symbol& s, const OperatorSpec& spec) {
  return spec.flat ? map_coefficients(s, &substitute_flat_h) : s;
}

}  // namespace

Symbol laplace_symbol(const OperatorSpec& spec) {
  spec.validate();
  const int d = spec.d;
  const int half = d / 2;
  Symbol s(d);
  s.add_term(hp(-2), xi_norm(1));

  NCPoly phi;
  for (int a = 1; a <= d; ++a) {
    NCPoly y = hp(half - 2) * derive(hp(-half), a, d) + hp(-half) * derive(hp(half - 2), a, d);
    if (spec.has_torsion()) y += torsion(a);
    s.add_term(y, xi_axis(a));

    phi += hp(half - 2) * derive(derive(hp(-half), a, d), a, d);
    phi += hp(-half) * (derive(hp(d - 2), a, d) * derive(hp(-half), a, d));
    if (spec.has_torsion()) phi += make_rational(1, 2) * derive(torsion(a), a, d);
  }
  if (spec.has_x()) phi += NCPoly::letter(Letter::x());
  s.add_term(phi, XiMonomial{});
  return flatten(s, spec);
}

Symbol laplace_symbol_by_composition(const OperatorSpec& spec) {
  spec.validate();
  const int d = spec.d;
  const int floor = -1;  // all factors are differential operators
  auto mult = [&](const NCPoly& c) { return Symbol::constant(c, d); };
  Symbol total(d);
  for (int a = 1; a <= d; ++a) {
    const Symbol da = Symbol::term(NCPoly::one(), xi_axis(a), d);
    Symbol op = mult(hp(-d / 2));
    op = symbol_product(op, da, floor);
    op = symbol_product(op, mult(hp(d - 2)), floor);
    op = symbol_product(op, da, floor);
    op = symbol_product(op, mult(hp(-d / 2)), floor);
    total += op;
    if (spec.has_torsion()) {
      total += symbol_product(mult(torsion(a)), da, floor);
      total += mult(make_rational(1, 2) * derive(torsion(a), a, d));
    }
  }
  if (spec.has_x()) total += mult(NCPoly::letter(Letter::x()));
  return flatten(total, spec);
}

Symbol invert_leading(const Symbol& a2) {
  const auto fail = [] { throw std::domain_error("non-invertible principal symbol"); };
  if (a2.components().size() != 1 || a2.max_degree() != 2) fail();
  const auto& comp = a2.components().begin()->second;
  if (comp.size() != 1) fail();
  const auto& [xi, c] = *comp.begin();
  if (xi != xi_norm(1) || c.size() != 1) fail();
  const auto& [w, q] = *c.terms().begin();
  Word inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->is_plain_h()) {
      inv.push_back(Letter::hinv());
    } else if (it->is_hinv()) {
      inv.push_back(Letter::h());
    } else {
      fail();
    }
  }
  return Symbol::term(NCPoly::word(inv, 1 / q), xi_norm(-1), a2.dim());
}

Symbol ParametrixResult::sum() const {
  Symbol s(b.empty() ? 4 : b.front().dim());
  for (const auto& bk : b) s += bk;
  return s;
}

ParametrixResult parametrix_terms(const Symbol& a, int n, Side side, bool with_defect) {
  if (n < 0) throw std::invalid_argument("parametrix order must be non-negative");
  if (a.is_zero() || a.max_degree() != 2) throw std::domain_error("non-invertible principal symbol");
  const int d = a.dim();
  ParametrixResult r;
  r.b.push_back(invert_leading(homogeneous_component(a, 2)));
  const Symbol b0 = r.b.front();
  Symbol partial = b0;
  for (int k = 1; k <= n; ++k) {
    Symbol bk(d);
    if (side == Side::Left) {
      const Symbol lower = homogeneous_component(symbol_product(partial, a, -k), -k);
      bk = -pointwise_product(lower, b0);
    } else {
      const Symbol lower = homogeneous_component(symbol_product(a, partial, -k), -k);
      bk = -pointwise_product(b0, lower);
    }
    partial += bk;
    r.b.push_back(std::move(bk));
  }
  if (!with_defect) return r;
  const Symbol composed = side == Side::Left ? symbol_product(partial, a, -n - 3) : symbol_product(a, partial, -n - 3);
  r.defect = composed - Symbol::one(d);
  return r;
}

Symbol closed_form_b1(const Symbol& a) {
  const int d = a.dim();
  const Symbol b0 = invert_leading(homogeneous_component(a, 2));
  const Symbol a1 = homogeneous_component(a, 1);
  const Symbol a2 = homogeneous_component(a, 2);
  Symbol inner = pointwise_product(pointwise_product(b0, a1), b0);
  for (int k = 1; k <= d; ++k) {
    inner += pointwise_product(pointwise_product(partial_xi(b0, k), derive_coefficients(a2, k)), b0);
  }
  return -inner;
}

Symbol closed_form_b2(const Symbol& a) {
  const int d = a.dim();
  const Symbol b0 = invert_leading(homogeneous_component(a, 2));
  const Symbol b1 = closed_form_b1(a);
  const Symbol a0 = homogeneous_component(a, 0);
  const Symbol a1 = homogeneous_component(a, 1);
  const Symbol a2 = homogeneous_component(a, 2);
  auto pw = [](const Symbol& x, const Symbol& y, const Symbol& z) {
    return pointwise_product(pointwise_product(x, y), z);
  };
  Symbol inner = pw(b0, a0, b0) + pw(b1, a1, b0);
  for (int j = 1; j <= d; ++j) {
    inner += pw(partial_xi(b0, j), derive_coefficients(a1, j), b0);
    inner += pw(partial_xi(b1, j), derive_coefficients(a2, j), b0);
    for (int k = 1; k <= d; ++k) {
      const Symbol dd = pw(partial_xi(partial_xi(b0, j), k), derive_coefficients(derive_coefficients(a2, j), k), b0);
      inner += make_rational(1, 2) * dd;
    }
  }
  return -inner;
}

Symbol closed_form_b2(const OperatorSpec& spec) { return closed_form_b2(laplace_symbol(spec)); }

}  // namespace ncwres
