#include "ncwres/sampling.hpp"
#include "ncwres/symcalc.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace ncwres;
using ncwres::testing::same_symbol;

namespace {

constexpr int kD = 4;

XiMonomial xi_mono(std::initializer_list<int> alpha, int m) {
  XiMonomial x;
  int i = 0;
  for (int a : alpha) x.alpha[i++] = static_cast<std::uint8_t>(a);
  x.m = m;
  return x;
}

NCPoly h() { return NCPoly::letter(Letter::h()); }

}  // namespace

TEST_CASE("xi derivative of monomials") {
  // d/dxi_1 (xi_1^2 |xi|^-2) = 2 xi_1 |xi|^-2 - 2 xi_1^3 |xi|^-4
  const Symbol s = Symbol::term(h(), xi_mono({2, 0, 0, 0}, -1), kD);
  Symbol expected(kD);
  expected.add_term(Rational(2) * h(), xi_mono({1, 0, 0, 0}, -1));
  expected.add_term(Rational(-2) * h(), xi_mono({3, 0, 0, 0}, -2));
  CHECK(partial_xi(s, 1) == expected);
  CHECK(partial_xi(s, 1).max_degree() == -1);
  // d/dxi_a |xi|^2 = 2 xi_a
  CHECK(same_symbol(partial_xi(Symbol::term(h(), xi_mono({}, 1), kD), 3),
                    Symbol::term(Rational(2) * h(), xi_mono({0, 0, 1, 0}, 0), kD)));
}

TEST_CASE("rendering") {
  CHECK(xi_to_string(xi_mono({1, 0, 2, 0}, -1), kD) == "xi1.xi3^2.|xi|^-2");
  CHECK(xi_to_string(XiMonomial{}, kD) == "1");
  CHECK(to_string(Symbol::term(h(), xi_mono({}, -1), kD)) == "degree -2:\n  (h) * |xi|^-2\n");
  CHECK(inverse_factorial(xi_mono({2, 3, 0, 0}, 0).alpha) == Rational(1, 12));
}

TEST_CASE("the unit symbol is neutral") {
  const Symbol one = Symbol::one(kD);
  for (std::uint64_t s = 0; s < 5; ++s) {
    RandomSymbolOptions o;
    o.top_degree = 1;
    const Symbol p = random_symbol(kD, 500 + s, o);
    CHECK(symbol_product(one, p, -10) == p);
    CHECK(symbol_product(p, one, -10) == p);
  }
}

TEST_CASE("composition of multiplication operators is pointwise") {
  const Symbol a = Symbol::constant(h(), kD);
  const Symbol b = Symbol::constant(NCPoly::letter(Letter::t(2)), kD);
  CHECK(symbol_product(a, b, -5) == pointwise_product(a, b));
  // xi_a o h = h xi_a + delta_a(h)
  const Symbol xi1 = Symbol::term(NCPoly::one(), xi_mono({1, 0, 0, 0}, 0), kD);
  Symbol expected = Symbol::term(h(), xi_mono({1, 0, 0, 0}, 0), kD);
  expected += Symbol::constant(NCPoly::letter(derived(Letter::h(), 1)), kD);
  CHECK(symbol_product(xi1, a, -5) == expected);
}

TEST_CASE("composition is associative up to truncation") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    RandomSymbolOptions o;
    o.top_degree = 1;
    o.max_word_length = 1;
    const Symbol p = random_symbol(kD, 600 + 3 * s, o);
    const Symbol q = random_symbol(kD, 601 + 3 * s, o);
    o.top_degree = -1;
    const Symbol r = random_symbol(kD, 602 + 3 * s, o);
    constexpr int floor = -2;
    const Symbol lhs = symbol_product(symbol_product(p, q, floor - 1), r, floor);
    const Symbol rhs = symbol_product(p, symbol_product(q, r, floor - 1), floor);
    CHECK(same_symbol(lhs, rhs));
  }
}

TEST_CASE("parallel and serial composition agree exactly") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    RandomSymbolOptions o;
    o.top_degree = 2;
    o.depth = 3;
    const Symbol p = random_symbol(kD, 700 + 2 * s, o);
    o.top_degree = -2;
    const Symbol q = random_symbol(kD, 701 + 2 * s, o);
    CHECK(symbol_product(p, q, -6) == symbol_product_serial(p, q, -6));
  }
}

TEST_CASE("truncation keeps exactly the components at or above the floor") {
  RandomSymbolOptions o;
  o.top_degree = 1;
  o.depth = 3;
  const Symbol p = random_symbol(kD, 801, o);
  const Symbol q = random_symbol(kD, 802, o);
  const Symbol full = symbol_product(p, q, -3);
  const Symbol cut = symbol_product(p, q, -1);
  CHECK(cut.min_degree() >= -1);
  for (int k = -1; k <= 2; ++k) CHECK(homogeneous_component(cut, k) == homogeneous_component(full, k));
}

TEST_CASE("folding norm squares is sound") {
  Symbol s(kD);
  for (int a = 1; a <= kD; ++a) {
    XiMonomial x;
    x.alpha[a - 1] = 2;
    x.m = -2;
    s.add_term(h(), x);
  }
  const Symbol folded = fold_norm_squares(s);
  CHECK(folded == Symbol::term(h(), xi_mono({}, -1), kD));
  CHECK(same_symbol(folded, s));
  // Incomplete sums stay put.
  Symbol partial(kD);
  partial.add_term(h(), xi_mono({2, 0, 0, 0}, 0));
  CHECK(fold_norm_squares(partial) == partial);
}

TEST_CASE("coefficient derivation follows Leibniz through composition") {
  RandomSymbolOptions o;
  o.top_degree = 1;
  o.max_word_length = 1;
  const Symbol p = random_symbol(kD, 901, o);
  const Symbol q = random_symbol(kD, 902, o);
  constexpr int floor = -2;
  const Symbol lhs = derive_coefficients(symbol_product(p, q, floor), 2);
  const Symbol rhs = symbol_product(derive_coefficients(p, 2), q, floor) +
                     symbol_product(p, derive_coefficients(q, 2), floor);
  CHECK(same_symbol(lhs, rhs));
}
