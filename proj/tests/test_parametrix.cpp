#include "ncwres/parametrix.hpp"
#include "support.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace ncwres;
using ncwres::testing::same_symbol;

namespace {

XiMonomial norm_power(int m) {
  XiMonomial x;
  x.m = m;
  return x;
}

OperatorSpec spec_for(int d, bool torsion, bool include_x) {
  OperatorSpec s;
  s.d = d;
  s.torsion = torsion;
  s.include_x = include_x;
  return s;
}

bool defect_vanishes_down_to(const Symbol& defect, int k) {
  return defect.is_zero() || defect.max_degree() < k;
}

}  // namespace

TEST_CASE("operator spec validation") {
  CHECK_THROWS_AS(spec_for(3, true, false).validate(), std::invalid_argument);
  CHECK_THROWS_AS(spec_for(0, true, false).validate(), std::invalid_argument);
  CHECK_THROWS_AS(spec_for(10, true, false).validate(), std::invalid_argument);
  CHECK_NOTHROW(spec_for(6, true, true).validate());
}

TEST_CASE("flat Laplacian symbol is |xi|^2") {
  OperatorSpec s;
  s.flat = true;
  s.include_x = true;
  CHECK(laplace_symbol(s) == Symbol::term(NCPoly::one(), norm_power(1), 4));
}

TEST_CASE("principal symbol is h^-2 |xi|^2") {
  for (int d : {2, 4, 6}) {
    const Symbol a = laplace_symbol(spec_for(d, true, true));
    CHECK(a.max_degree() == 2);
    CHECK(homogeneous_component(a, 2) == Symbol::term(expand_h_power(-2), norm_power(1), d));
  }
}

TEST_CASE("symbol assembly agrees with composing the factors") {
  for (int d : {2, 4, 6}) {
    for (bool t : {false, true}) {
      const auto spec = spec_for(d, t, true);
      CHECK(same_symbol(laplace_symbol(spec), laplace_symbol_by_composition(spec)));
    }
  }
}

TEST_CASE("leading inversion") {
  const Symbol a2 = Symbol::term(Rational(3) * expand_h_power(-2), norm_power(1), 4);
  CHECK(invert_leading(a2) == Symbol::term(Rational(1, 3) * expand_h_power(2), norm_power(-1), 4));
  const Symbol bad = Symbol::term(NCPoly::letter(Letter::t(1)), norm_power(1), 4);
  CHECK_THROWS_AS(invert_leading(bad), std::domain_error);
  CHECK_THROWS_AS(parametrix_terms(Symbol::one(4), 1), std::domain_error);
  CHECK_THROWS_AS(parametrix_terms(laplace_symbol(OperatorSpec{}), -1), std::invalid_argument);
}

TEST_CASE("b0 is h^2 |xi|^-2") {
  const auto r = parametrix_terms(laplace_symbol(OperatorSpec{}), 0);
  REQUIRE(r.b.size() == 1);
  CHECK(r.b[0] == Symbol::term(expand_h_power(2), norm_power(-1), 4));
}

TEST_CASE("flat parametrix has no corrections") {
  OperatorSpec s;
  s.flat = true;
  const auto r = parametrix_terms(laplace_symbol(s), 2);
  CHECK(r.b[1].is_zero());
  CHECK(r.b[2].is_zero());
  CHECK(r.defect.is_zero());
}

TEST_CASE("first-order parametrix kills the defect at degrees 0 and -1") {
  for (int d : {2, 4, 6}) {
    for (Side side : {Side::Left, Side::Right}) {
      const auto r = parametrix_terms(laplace_symbol(spec_for(d, true, true)), 1, side);
      CHECK(r.b[1].max_degree() == -3);
      CHECK(defect_vanishes_down_to(r.defect, -1));
      CHECK_FALSE(r.defect.is_zero());
    }
  }
}

TEST_CASE("the defect can be skipped") {
  const auto a = laplace_symbol(OperatorSpec{});
  const auto with = parametrix_terms(a, 1);
  const auto without = parametrix_terms(a, 1, Side::Left, false);
  CHECK(without.defect.is_zero());
  CHECK(with.b == without.b);
}

TEST_CASE("closed form b1 equals the recursion") {
  for (int d : {2, 4, 6}) {
    for (bool t : {false, true}) {
      const auto a = laplace_symbol(spec_for(d, t, true));
      CHECK(closed_form_b1(a) == parametrix_terms(a, 1, Side::Left, false).b[1]);
    }
  }
}
