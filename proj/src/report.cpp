#include "ncwres/report.hpp"

#include <stdexcept>

namespace ncwres {

namespace {

// Reduction tags: distinct pi powers never merge but share the relation
// system of their grade.
constexpr int kTargetTag = 1000;

int common_pi_power(const TraceExpression& e, int fallback) {
  int pi = fallback;
  bool seen = false;
  for (const auto& [k, q] : e.terms()) {
    if (seen && k.pi_power != pi) throw std::invalid_argument("fit_shapes needs a single pi power per expression");
    pi = k.pi_power;
    seen = true;
  }
  return pi;
}

void add_tagged(TraceExpression& out, const TraceExpression& e, int tag) {
  for (const auto& [k, q] : e.terms()) out.add(k.word, Scalar(q, tag));
}

/// Reduced row echelon solve of A c = b; A is words x n.
bool solve(std::vector<std::vector<Rational>> rows, std::size_t n, std::vector<Rational>& c) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = col; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rows[i][n] != 0) return false;
  }
  c.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = rows[i][n];
  return true;
}

TraceExpression summed_over_axes(int d, const Scalar& factor, Word (*make)(int axis, int d)) {
  TraceExpression e;
  for (int a = 1; a <= d; ++a) e.add(make(a, d), factor);
  return e;
}

NCPoly h_squared() { return NCPoly::word({Letter::h(), Letter::h()}); }

}  // namespace

ShapeFit fit_shapes(const TraceExpression& target, const std::vector<TraceExpression>& shapes) {
  int pi = common_pi_power(target, -1);
  for (const auto& s : shapes) pi = common_pi_power(s, pi);
  TraceExpression joint;
  add_tagged(joint, target, kTargetTag);
  for (std::size_t i = 0; i < shapes.size(); ++i) add_tagged(joint, shapes[i], kTargetTag + 1 + static_cast<int>(i));
  const TraceExpression reduced = ibp_reduce(joint);

  std::map<Word, std::size_t> row_of;
  for (const auto& [k, q] : reduced.terms()) row_of.emplace(k.word, row_of.size());
  const std::size_t n = shapes.size();
  std::vector<std::vector<Rational>> rows(row_of.size(), std::vector<Rational>(n + 1, Rational(0)));
  for (const auto& [k, q] : reduced.terms()) {
    const auto col = k.pi_power == kTargetTag ? n : static_cast<std::size_t>(k.pi_power - kTargetTag - 1);
    rows[row_of.at(k.word)][col] = q;
  }

  ShapeFit fit;
  fit.in_span = solve(rows, n, fit.coefficients);
  if (!fit.in_span) fit.coefficients.assign(n, Rational(0));
  // residual = target - sum c_i shape_i in reduced form
  for (const auto& [k, q] : reduced.terms()) {
    Rational v = k.pi_power == kTargetTag ? q : -fit.coefficients[static_cast<std::size_t>(k.pi_power - kTargetTag - 1)] * q;
    fit.residual.add_canonical(TraceKey{pi < 0 ? 0 : pi, k.word}, v);
  }
  return fit;
}

std::vector<TraceExpression> torsion_shapes(int d) {
  if (d != 4) throw std::invalid_argument("torsion shapes are defined for d = 4");
  const Scalar two_pi2(2, 2);
  const NCPoly h2 = h_squared();
  std::vector<TraceExpression> shapes(3);
  for (int a = 1; a <= d; ++a) {
    const NCPoly t = NCPoly::letter(Letter::t(a));
    const NCPoly dh2 = derive(h2, a, d);
    shapes[0] += TraceExpression::trace_of(h2 * t * h2 * t * h2, two_pi2);
    shapes[1] += TraceExpression::trace_of(h2 * (t * dh2 - dh2 * t), two_pi2);
    shapes[2] += TraceExpression::trace_of(dh2 * NCPoly::word({Letter::hinv(), Letter::hinv()}) * dh2, two_pi2);
  }
  return shapes;
}

std::vector<std::string> torsion_shape_names() {
  return {"t[h^2.T_a.h^2.T_a.h^2]", "t[h^2.[T_a, d_a(h^2)]]", "t[d_a(h^2).h^-2.d_a(h^2)]"};
}

StructureReport inverse_residue_structure(const OperatorSpec& spec, Side side) {
  if (spec.d != 4) throw std::invalid_argument("structure report is defined for d = 4");
  StructureReport r;
  r.residue = wres_inverse_power(spec, 1, spec.d - 2, side);
  r.fit = fit_shapes(r.residue, torsion_shapes(spec.d));
  r.printed_coefficients = {Rational(1), Rational(1, 4), Rational(-1, 4)};
  for (std::size_t i = 0; i < r.printed_coefficients.size(); ++i) {
    r.printed_matches.push_back(r.fit.in_span && r.fit.coefficients[i] == r.printed_coefficients[i]);
  }
  return r;
}

CommutativeLimit commutative_limit_check(Side side) {
  constexpr int d = 4;
  CommutativeLimit out;
  OperatorSpec plain;
  plain.torsion = false;
  out.residue = wres_inverse_power(plain, 1, d - 2, side);

  out.gradient_form = summed_over_axes(d, Scalar(-2, 2), [](int a, int) {
    return Word{derived(Letter::h(), a), derived(Letter::h(), a)};
  });
  // (1/6) h^4 * 6 h^-3 delta_aa(h) = h delta_aa(h) once letters commute
  out.curvature_form = summed_over_axes(d, Scalar(2, 2), [](int a, int) {
    return Word{Letter::h(), Letter::h(), Letter::h(), Letter::h(), Letter::hinv(), Letter::hinv(), Letter::hinv(),
                derived(derived(Letter::h(), a), a)};
  });
  out.residue_matches_gradient = commutative_equal(out.residue, out.gradient_form);
  out.gradient_matches_curvature = commutative_equal(out.gradient_form, out.curvature_form);

  const auto structure = inverse_residue_structure(OperatorSpec{}, side);
  if (structure.fit.in_span) {
    // S2 is a commutator and drops; S3 -> 4 t(delta_a(h)^2 h^2 h^-2)
    TraceExpression image = summed_over_axes(d, Scalar(2 * structure.fit.coefficients[0], 2), [](int a, int) {
      return Word{Letter::h(), Letter::h(), Letter::h(), Letter::h(), Letter::h(), Letter::h(), Letter::t(a), Letter::t(a)};
    });
    image += summed_over_axes(d, Scalar(8 * structure.fit.coefficients[2], 2), [](int a, int) {
      return Word{derived(Letter::h(), a), derived(Letter::h(), a)};
    });
    out.torsion_image_matches = commutative_equal(structure.residue, image);
  }
  return out;
}

MinimalityReport minimality_report(Side side) {
  const TraceExpression r = wres_inverse_power(OperatorSpec{}, 1, 2, side);
  MinimalityReport m;
  m.linear = torsion_part(r, 1);
  m.quadratic = torsion_part(r, 2);
  m.commutative_linear = commutative_specialize(m.linear);
  m.commutative_quadratic = commutative_specialize(m.quadratic);
  m.torsion_dependent = !(m.linear.is_zero() && m.quadratic.is_zero());
  return m;
}

}  // namespace ncwres
