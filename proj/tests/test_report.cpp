#include "ncwres/report.hpp"

#include <doctest.h>

using namespace ncwres;

namespace {

Letter dh(int a) { return derived(Letter::h(), a); }

}  // namespace

TEST_CASE("fitting an expression against its own shapes") {
  const auto shapes = torsion_shapes();
  REQUIRE(shapes.size() == 3);
  REQUIRE(torsion_shape_names().size() == 3);
  const TraceExpression target = Scalar(Rational(3)) * shapes[0] + Scalar(Rational(-1, 2)) * shapes[2];
  const auto fit = fit_shapes(target, shapes);
  CHECK(fit.in_span);
  CHECK(fit.residual.is_zero());
  CHECK(fit.coefficients == std::vector<Rational>{Rational(3), Rational(0), Rational(-1, 2)});
}

TEST_CASE("fitting sees through integration by parts") {
  // t(h delta_11 h) and -t(delta_1 h delta_1 h) are the same functional.
  const std::vector<TraceExpression> shapes{TraceExpression::trace_of(Word{dh(1), dh(1)})};
  const auto fit = fit_shapes(TraceExpression::trace_of(Word{Letter::h(), derived(dh(1), 1)}), shapes);
  CHECK(fit.in_span);
  CHECK(fit.coefficients == std::vector<Rational>{Rational(-1)});
}

TEST_CASE("an expression outside the span leaves a residual") {
  const std::vector<TraceExpression> shapes{TraceExpression::trace_of(Word{dh(1), dh(1)})};
  const auto fit = fit_shapes(TraceExpression::trace_of(Word{dh(2), dh(2)}), shapes);
  CHECK_FALSE(fit.in_span);
  CHECK_FALSE(fit.residual.is_zero());
}

TEST_CASE("structure of the inverse residue at d = 4") {
  const auto rep = inverse_residue_structure(OperatorSpec{});
  CHECK(rep.fit.in_span);
  CHECK(rep.fit.coefficients == std::vector<Rational>{Rational(1, 4), Rational(-1, 4), Rational(-1, 4)});
  CHECK(rep.printed_coefficients == std::vector<Rational>{Rational(1), Rational(1, 4), Rational(-1, 4)});
  CHECK(rep.printed_matches == std::vector<bool>{false, false, true});
  // Both parametrix sides agree.
  CHECK(inverse_residue_structure(OperatorSpec{}, Side::Right).fit.coefficients == rep.fit.coefficients);
}

TEST_CASE("commutative limit") {
  const auto c = commutative_limit_check();
  CHECK(c.residue_matches_gradient);
  CHECK(c.gradient_matches_curvature);
  CHECK(c.torsion_image_matches);
}

TEST_CASE("torsion makes the residue non-minimal") {
  const auto m = minimality_report();
  CHECK(m.torsion_dependent);
  CHECK_FALSE(m.linear.is_zero());
  CHECK_FALSE(m.quadratic.is_zero());
  // In the commutative image the linear part integrates away, the quadratic part stays.
  CHECK(m.commutative_linear.is_zero());
  CHECK_FALSE(m.commutative_quadratic.is_zero());
}
