#include "ncwres/sampling.hpp"
#include "ncwres/trace.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace ncwres;

namespace {

constexpr int kD = 4;

Letter dh(int a) { return derived(Letter::h(), a); }
Letter ddh(int a, int b) { return derived(derived(Letter::h(), a), b); }

TraceExpression tr(const NCPoly& p) { return TraceExpression::trace_of(p); }

}  // namespace

TEST_CASE("cyclic normal form") {
  const Word w{Letter::t(2), Letter::h(), Letter::t(1)};
  CHECK(cyclic_normal_form(w) == Word{Letter::h(), Letter::t(1), Letter::t(2)});
  // Every rotation has the same normal form.
  for (std::size_t r = 0; r < w.size(); ++r) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    CHECK(cyclic_normal_form(rot) == cyclic_normal_form(w));
  }
  // h ... h^-1 cancels across the seam.
  CHECK(cyclic_normal_form({Letter::h(), Letter::t(3), Letter::hinv()}) == Word{Letter::t(3)});
  CHECK(cyclic_normal_form({Letter::hinv(), Letter::x(), Letter::h()}) == Word{Letter::x()});
  CHECK(cyclic_normal_form({Letter::h(), Letter::hinv()}).empty());
}

TEST_CASE("pi powers never merge") {
  TraceExpression e;
  e.add({Letter::h()}, Scalar(1, 0));
  e.add({Letter::h()}, Scalar(1, 2));
  CHECK(e.size() == 2);
  e.add({Letter::h()}, Scalar(-1, 2));
  CHECK(e.size() == 1);
  CHECK(to_string(e) == "t[h]");
}

TEST_CASE("trace of a commutator vanishes") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto p = random_poly(kD, 7 * s + 1, 3, 3, true, true);
    const auto q = random_poly(kD, 7 * s + 2, 3, 3, true, true);
    CHECK(tr(p * q - q * p).is_zero());
  }
}

TEST_CASE("integration by parts: t(delta_a(x)) reduces to zero") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto p = random_poly(kD, 40 + s, 2, 3, true, true);
    for (int a = 1; a <= kD; ++a) {
      CHECK(ibp_reduce(tr(derive(p, a, kD))).is_zero());
    }
  }
  // t(h delta_11 h) = -t(delta_1 h delta_1 h)
  const auto lhs = TraceExpression::trace_of(Word{Letter::h(), ddh(1, 1)});
  const auto rhs = TraceExpression::trace_of(Word{dh(1), dh(1)}, Scalar(-1));
  CHECK(trace_equal(lhs, rhs));
  CHECK_FALSE(trace_equal(lhs, TraceExpression::trace_of(Word{dh(1), dh(1)})));
}

TEST_CASE("IBP reduction is idempotent and ignores exact terms") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto p = random_poly(kD, 60 + 2 * s, 3, 3, true, false);
    const auto q = random_poly(kD, 61 + 2 * s, 2, 2, true, false);
    TraceExpression e = tr(derive(p, 2, kD) * derive(q, 1, kD)) + tr(p * q);
    const auto r = ibp_reduce(e);
    CHECK(ibp_reduce(r) == r);
    CHECK(ibp_reduce(e + tr(derive(p * q, 3, kD))) == r);
    CHECK(ibp_reduce(Scalar(Rational(-2), 0) * e) == Scalar(Rational(-2), 0) * r);
  }
}

TEST_CASE("declared order bound") {
  const auto e = TraceExpression::trace_of(Word{Letter::h(), ddh(1, 2)});
  CHECK_THROWS_AS(ibp_reduce(e, 1), std::invalid_argument);
  CHECK_NOTHROW(ibp_reduce(e, 2));
}

TEST_CASE("commutative specialization") {
  const auto a = TraceExpression::trace_of(Word{Letter::h(), Letter::t(1), Letter::h(), Letter::t(2)});
  const auto b = TraceExpression::trace_of(Word{Letter::h(), Letter::h(), Letter::t(1), Letter::t(2)});
  CHECK_FALSE(trace_equal(a, b));
  CHECK(commutative_equal(a, b));
  // In the commutative ring t(h^2 delta_1 delta_1 h) = -2 t(h (delta_1 h)^2).
  const auto c = TraceExpression::trace_of(Word{Letter::h(), Letter::h(), ddh(1, 1)});
  const auto d = TraceExpression::trace_of(Word{Letter::h(), dh(1), dh(1)}, Scalar(-2));
  CHECK(commutative_equal(c, d));
}

TEST_CASE("torsion part and rendering") {
  TraceExpression e;
  e.add({Letter::h(), Letter::t(1), Letter::t(1)}, Scalar(Rational(1, 4), 2));
  e.add({Letter::h(), Letter::t(2)}, Scalar(Rational(1, 2), 2));
  e.add({Letter::h(), Letter::h()}, Scalar(Rational(2), 2));
  CHECK(torsion_part(e, 0).size() == 1);
  CHECK(torsion_part(e, 1).size() == 1);
  CHECK(torsion_part(e, 2).size() == 1);
  CHECK(render_with_prefactor(torsion_part(e, 0), Scalar(2, 2)) == "2*pi^2 * t[h^2]");
  CHECK(render_with_prefactor(TraceExpression{}, Scalar(2, 2)) == "0");
  CHECK(render_with_prefactor(torsion_part(e, 2), Scalar(2, 2)) == "2*pi^2 * ( 1/8 t[h.T1^2] )");
}
