#include "ncwres/sampling.hpp"
#include "ncwres/serialize.hpp"
#include "ncwres/wres.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace ncwres;

namespace {

// Round trips go through text so the parser sees what a file would hold.
Json reparse(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST_CASE("scalars") {
  CHECK(scalar_to_json(Rational(-3, 4), 2) == Json{{"num", -3}, {"den", 4}, {"pi", 2}});
  CHECK(scalar_from_json(Json{{"num", 6}, {"den", 8}}) == Scalar(Rational(3, 4), 0));
  CHECK_THROWS_AS(scalar_from_json(Json{{"num", 1}, {"den", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_json(Json{{"num", "one"}, {"den", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_json(Json{{"den", 1}}), std::invalid_argument);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 60);
  CHECK_THROWS_AS(scalar_to_json(Rational(big)), std::overflow_error);
}

TEST_CASE("letters") {
  const Letter l = derived(derived(Letter::t(3), 1), 4);
  const Json j = letter_to_json(l, 4);
  CHECK(j == Json::parse(R"({"base":"T","axis":3,"deriv":[1,0,0,1]})"));
  CHECK(letter_from_json(j) == l);
  CHECK(letter_from_json(Json::parse(R"({"base":"Hinv"})")) == Letter::hinv());
  CHECK_THROWS_AS(letter_from_json(Json::parse(R"({"base":"Hinv","deriv":[1,0,0,0]})")), std::invalid_argument);
  CHECK_THROWS_AS(letter_from_json(Json::parse(R"({"base":"Y"})")), std::invalid_argument);
  CHECK_THROWS_AS(letter_from_json(Json::parse(R"({"base":"T","axis":0})")), std::invalid_argument);
}

TEST_CASE("polynomial round trip") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto p = random_poly(4, s, 4, 4, true, true);
    CHECK(ncpoly_from_json(reparse(to_json(p, 4))) == p);
  }
  const auto pi_coef = Json::parse(R"({"terms":[{"coef":{"num":1,"den":1,"pi":1},"word":[]}]})");
  CHECK_THROWS_AS(ncpoly_from_json(pi_coef), std::invalid_argument);
  // Words are normalized on input.
  const auto hh = Json::parse(R"({"terms":[{"coef":{"num":2,"den":1},"word":[{"base":"H"},{"base":"Hinv"}]}]})");
  CHECK(ncpoly_from_json(hh) == NCPoly::constant(2));
}

TEST_CASE("trace expression round trip") {
  OperatorSpec spec;
  spec.include_x = true;
  const auto w = wres_inverse_power(spec, 1, 2);
  REQUIRE_FALSE(w.is_zero());
  CHECK(trace_expression_from_json(reparse(to_json(w, 4))) == w);
  const auto untagged = Json::parse(R"({"terms":[{"coef":{"num":1,"den":1},"word":[]}]})");
  CHECK_THROWS_AS(trace_expression_from_json(untagged), std::invalid_argument);
}

TEST_CASE("symbol round trip") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    RandomSymbolOptions o;
    o.top_degree = 1;
    o.depth = 3;
    const auto sym = random_symbol(4, 40 + s, o);
    CHECK(symbol_from_json(reparse(to_json(sym)), 4) == sym);
  }
  const auto pr = parametrix_terms(laplace_symbol(OperatorSpec{}), 1);
  CHECK(symbol_from_json(reparse(to_json(pr.b[1])), 4) == pr.b[1]);
  const auto wrong_key =
      Json::parse(R"({"components":{"1":[{"coef":{"terms":[]},"alpha":[0,0,0,0],"m":1}]}})");
  CHECK_THROWS_AS(symbol_from_json(wrong_key, 4), std::invalid_argument);
  const auto short_alpha = Json::parse(R"({"components":{"2":[{"coef":{"terms":[]},"alpha":[0,0],"m":1}]}})");
  CHECK_THROWS_AS(symbol_from_json(short_alpha, 4), std::invalid_argument);
}

TEST_CASE("operator spec round trip") {
  OperatorSpec s;
  s.d = 6;
  s.torsion = false;
  s.include_x = true;
  const auto back = operator_spec_from_json(reparse(to_json(s)));
  CHECK(back.d == 6);
  CHECK_FALSE(back.torsion);
  CHECK(back.include_x);
  CHECK_FALSE(back.flat);
  CHECK(operator_spec_from_json(Json::object()).d == 4);
  CHECK_THROWS_AS(operator_spec_from_json(Json{{"d", 5}}), std::invalid_argument);
  CHECK_THROWS_AS(operator_spec_from_json(Json{{"d", "four"}}), std::invalid_argument);
  CHECK_THROWS_AS(operator_spec_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("assignment round trip") {
  RandomAssignmentOptions o;
  o.radius = 2;
  const auto a = random_assignment(ThetaMatrix::from_upper(4, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}), 7, o);
  const auto b = assignment_from_json(reparse(to_json(a)));
  CHECK(b.theta == a.theta);
  CHECK(b.tol == a.tol);
  REQUIRE(b.atoms.size() == a.atoms.size());
  for (const auto& [name, x] : a.atoms) CHECK(l1_distance(b.atoms.at(name), x) == 0.0);
  CHECK(l1_distance(b.h_inverse, a.h_inverse) < 1e-14);

  const auto no_h = Json::parse(R"({"theta":[[0,0],[0,0]],"atoms":{"T1":{"coeffs":[]}}})");
  CHECK_THROWS_WITH_AS(assignment_from_json(no_h), "missing atom binding: h", std::invalid_argument);
  const auto ragged = Json::parse(R"({"theta":[[0,0],[0]],"atoms":{}})");
  CHECK_THROWS_AS(assignment_from_json(ragged), std::invalid_argument);
  const auto asym = Json::parse(R"({"theta":[[0,0.3],[0.3,0]],"atoms":{"h":{"coeffs":[{"index":[0,0],"re":1}]}}})");
  CHECK_THROWS_AS(assignment_from_json(asym), std::invalid_argument);
}
