#include "ncwres/verify.hpp"

#include "ncwres/report.hpp"
#include "ncwres/sampling.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace ncwres {

namespace {

constexpr int kDim = 4;
constexpr double kOracleTol = 1e-8;

Json rational_json(const Rational& q) { return to_string(q); }

template <class F>
CheckResult timed(const std::string& name, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

OperatorSpec torsion_spec(bool include_x = false) {
  OperatorSpec s;
  s.include_x = include_x;
  return s;
}

OperatorSpec plain_spec() {
  OperatorSpec s;
  s.torsion = false;
  return s;
}

std::pair<Symbol, Symbol> trace_pair(std::uint64_t seed, int index) {
  RandomSymbolOptions p;
  p.top_degree = 1;
  p.depth = 2;
  RandomSymbolOptions q;
  q.top_degree = -kDim + 1;
  q.depth = 3;
  const auto base = seed * 1000 + static_cast<std::uint64_t>(index) * 2;
  return {random_symbol(kDim, base, p), random_symbol(kDim, base + 1, q)};
}

std::vector<int> defect_degrees(const Symbol& defect, int lowest_required) {
  std::vector<int> bad;
  for (const auto& [k, comp] : defect.components()) {
    if (k >= lowest_required) bad.push_back(k);
  }
  return bad;
}

}  // namespace

SphereIntegralTable verification_table(int d, bool fault) {
  SphereIntegralTable table(d);
  if (!fault) return table;
  return table.with_fault(index_sum(unit_index(1), unit_index(1)), Rational(2));
}

std::vector<ThetaMatrix> oracle_thetas(int d) {
  std::vector<double> rational;
  std::vector<double> irrational;
  const int pairs = d * (d - 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    rational.push_back(1.0 / (i + 2));
    irrational.push_back(std::fmod(std::sqrt(2.0) * (i + 1), 1.0));
  }
  return {ThetaMatrix::zero(d), ThetaMatrix::from_upper(d, rational), ThetaMatrix::from_upper(d, irrational)};
}

CheckResult check_trace_property(const VerifyOptions& opts) {
  const auto table = verification_table(kDim, opts.sphere_fault);
  CheckResult r;
  r.pass = true;
  Json failures = Json::array();
  for (int i = 0; i < opts.trace_pairs; ++i) {
    const auto [p, q] = trace_pair(opts.seed, i);
    const auto [pq, qp] = trace_property_probe(p, q, table);
    const bool equal = opts.mode == TraceMode::Commutative ? commutative_equal(pq, qp) : trace_equal(pq, qp);
    if (!equal) {
      r.pass = false;
      failures.push_back(i);
    }
  }
  r.detail = {{"pairs", opts.trace_pairs}, {"failed_pairs", failures}, {"sphere_fault", opts.sphere_fault}};
  return r;
}

CheckResult check_sphere_derivative_lemma() {
  CheckResult r;
  r.pass = true;
  Json rows = Json::array();
  const Scalar volume = sphere_volume(kDim);
  for (int rho : {1 - kDim, -1, 1, 3, 5}) {
    // V(d) (1 + (rho - 1)/d) on the diagonal, zero off it
    const Scalar expected(volume.q * (1 + Rational(rho - 1, kDim)), volume.pi_power);
    for (int i = 1; i <= kDim; ++i) {
      for (int j = 1; j <= kDim; ++j) {
        const Scalar got = sphere_derivative_lemma_check(i, j, rho, kDim);
        const bool ok = i == j ? got == expected : got.is_zero();
        r.pass = r.pass && ok;
        if (i == 1 && j == 1) rows.push_back({{"rho", rho}, {"value", to_string(got)}});
      }
    }
  }
  r.detail = {{"diagonal_values", rows}};
  return r;
}

CheckResult check_sphere_identities(const VerifyOptions& opts) {
  const auto table = verification_table(kDim, opts.sphere_fault);
  Rational first = 0;
  Rational second = 0;
  for (int a = 1; a <= kDim; ++a) {
    first += table(index_sum(unit_index(a), unit_index(a))).q;
    for (int b = 1; b <= kDim; ++b) {
      second += table(index_sum(index_sum(unit_index(a), unit_index(a)), index_sum(unit_index(b), unit_index(b)))).q;
    }
  }
  const Rational volume = table(MultiIndex{}).q;
  CheckResult r;
  r.pass = first == volume && second == volume;
  r.detail = {{"sum_xi_a^2", to_string(Scalar(first, kDim / 2))},
              {"sum_xi_a^2_xi_b^2", to_string(Scalar(second, kDim / 2))},
              {"volume", to_string(Scalar(volume, kDim / 2))}};
  return r;
}

CheckResult check_operator_assembly() {
  CheckResult r;
  r.pass = true;
  for (const auto& spec : {torsion_spec(), torsion_spec(true), plain_spec()}) {
    r.pass = r.pass && fold_norm_squares(laplace_symbol(spec)) == fold_norm_squares(laplace_symbol_by_composition(spec));
  }
  r.detail = {{"specs", 3}};
  return r;
}

CheckResult check_composition_defect() {
  CheckResult r;
  r.pass = true;
  Json rows = Json::array();
  constexpr int n = 2;
  for (const Side side : {Side::Left, Side::Right}) {
    const auto pr = parametrix_terms(laplace_symbol(torsion_spec()), n, side);
    const auto bad = defect_degrees(pr.defect, -n);
    std::vector<int> surviving;
    for (const auto& [k, comp] : pr.defect.components()) surviving.push_back(k);
    r.pass = r.pass && bad.empty();
    rows.push_back({{"side", side == Side::Left ? "left" : "right"}, {"surviving_degrees", surviving}});
  }
  r.detail = {{"order", n}, {"defects", rows}};
  return r;
}

CheckResult check_closed_forms() {
  CheckResult r;
  r.pass = true;
  for (const auto& spec : {torsion_spec(), plain_spec(), torsion_spec(true)}) {
    const Symbol a = laplace_symbol(spec);
    const auto pr = parametrix_terms(a, 2, Side::Left, false);
    r.pass = r.pass && closed_form_b1(a) == pr.b[1] && closed_form_b2(a) == pr.b[2];
  }
  r.detail = {{"specs", 3}};
  return r;
}

CheckResult check_inverse_square_residue() {
  const TraceExpression w = wres_inverse_power(torsion_spec(), 2, 0);
  const TraceExpression expected = TraceExpression::trace_of(Word(4, Letter::h()), Scalar(2, 2));
  CheckResult r;
  r.pass = trace_equal(w, expected);
  r.detail = {{"residue", render_with_prefactor(w, Scalar(2, 2))}};
  return r;
}

CheckResult check_inverse_residue_structure() {
  const auto s = inverse_residue_structure(torsion_spec());
  CheckResult r;
  r.pass = s.fit.in_span;
  Json shapes = Json::array();
  const auto names = torsion_shape_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    shapes.push_back({{"shape", names[i]},
                      {"coefficient", rational_json(s.fit.coefficients[i])},
                      {"printed_coefficient", rational_json(s.printed_coefficients[i])},
                      {"matches_printed", static_cast<bool>(s.printed_matches[i])}});
  }
  r.detail = {{"prefactor", "2*pi^2"}, {"shapes", shapes}, {"residual", to_string(s.fit.residual)}};
  return r;
}

CheckResult check_left_right_residue() {
  CheckResult r;
  r.pass = true;
  for (int power : {1, 2}) {
    const int n = power == 1 ? 2 : 0;
    r.pass = r.pass && trace_equal(wres_inverse_power(torsion_spec(true), power, n, Side::Left),
                                   wres_inverse_power(torsion_spec(true), power, n, Side::Right));
  }
  r.detail = {{"powers", {1, 2}}};
  return r;
}

CheckResult check_oracle_soundness(const VerifyOptions& opts) {
  // expressions the trace module certifies as zero
  std::vector<TraceExpression> zeros;
  const SphereIntegralTable table(kDim);
  for (const auto& spec : {torsion_spec(true), plain_spec()}) {
    const auto b = parametrix_terms(laplace_symbol(spec), 2, Side::Left, false).sum();
    const auto raw = wodzicki_residue_raw(b, table);
    zeros.push_back(raw - ibp_reduce(raw));
  }
  for (int i = 0; i < 3; ++i) {
    const auto [p, q] = trace_pair(opts.seed, i);
    const auto pq = wodzicki_residue_raw(symbol_product(p, q, -kDim), table);
    const auto qp = wodzicki_residue_raw(symbol_product(q, p, -kDim), table);
    if (trace_equal(pq, qp)) zeros.push_back(pq - qp);
  }
  CheckResult r;
  double worst = 0;
  for (const auto& bad : zeros) {
    if (!ibp_reduce(bad).is_zero()) throw std::logic_error("soundness input is not certified zero");
  }
  int evaluations = 0;
  for (const auto& theta : oracle_thetas(kDim)) {
    for (int k = 0; k < opts.oracle_assignments; ++k) {
      const auto asg = random_assignment(theta, opts.seed * 7919 + static_cast<std::uint64_t>(k));
      for (const auto& e : zeros) {
        worst = std::max(worst, std::abs(evaluate_trace_expression(e, asg)));
        ++evaluations;
      }
    }
  }
  r.pass = worst < kOracleTol;
  r.detail = {{"expressions", zeros.size()}, {"evaluations", evaluations}, {"max_abs", worst}, {"tolerance", kOracleTol}};
  return r;
}

RandomAssignmentOptions product_assignment_options() {
  RandomAssignmentOptions o;
  o.radius = 1;
  o.modes = 1;
  o.tol = 1e-13;
  return o;
}

CheckResult check_oracle_product(const VerifyOptions& opts) {
  const auto thetas = oracle_thetas(kDim);
  std::mt19937_64 rng(opts.seed * 104729 + 17);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst = 0;
  for (int i = 0; i < opts.product_cases; ++i) {
    RandomSymbolOptions po;
    po.top_degree = 1;
    RandomSymbolOptions qo;
    qo.top_degree = 0;
    const Symbol p = random_symbol(kDim, rng(), po);
    const Symbol q = random_symbol(kDim, rng(), qo);
    const auto asg =
        random_assignment(thetas[static_cast<std::size_t>(i) % thetas.size()], rng(), product_assignment_options());
    std::vector<double> xi(kDim);
    for (auto& v : xi) v = coord(rng);
    constexpr int floor = -2;
    const auto symbolic = evaluate_symbol_at_xi(symbol_product(p, q, floor), asg, xi);
    const auto numeric = product_gamma_sum_at_xi(p, q, asg, xi, floor);
    worst = std::max(worst, l1_distance(symbolic, numeric));
  }
  CheckResult r;
  r.pass = worst < kOracleTol;
  r.detail = {{"cases", opts.product_cases}, {"max_l1_distance", worst}, {"tolerance", kOracleTol}};
  return r;
}

CheckResult check_minimality() {
  const auto m = minimality_report();
  CheckResult r;
  r.pass = m.torsion_dependent && !m.linear.is_zero() && m.commutative_linear.is_zero() &&
           !m.commutative_quadratic.is_zero();
  r.detail = {{"linear_in_T", render_with_prefactor(m.linear, Scalar(2, 2))},
              {"quadratic_in_T", render_with_prefactor(m.quadratic, Scalar(2, 2))},
              {"commutative_linear_in_T", render_with_prefactor(m.commutative_linear, Scalar(2, 2))},
              {"commutative_quadratic_in_T", render_with_prefactor(m.commutative_quadratic, Scalar(2, 2))},
              {"minimal", !m.torsion_dependent}};
  return r;
}

CheckResult check_commutative_limit() {
  const auto c = commutative_limit_check();
  CheckResult r;
  r.pass = c.residue_matches_gradient && c.gradient_matches_curvature && c.torsion_image_matches;
  r.detail = {{"residue", render_with_prefactor(commutative_specialize(c.residue), Scalar(2, 2))},
              {"matches_gradient_form", c.residue_matches_gradient},
              {"matches_volume_curvature_form", c.gradient_matches_curvature},
              {"torsion_image_matches", c.torsion_image_matches}};
  return r;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
      {"trace_property", [&] { return check_trace_property(opts); }},
      {"sphere_derivative_lemma", [] { return check_sphere_derivative_lemma(); }},
      {"sphere_identities", [&] { return check_sphere_identities(opts); }},
      {"operator_assembly", [] { return check_operator_assembly(); }},
      {"composition_defect", [] { return check_composition_defect(); }},
      {"closed_forms", [] { return check_closed_forms(); }},
      {"inverse_square_residue", [] { return check_inverse_square_residue(); }},
      {"inverse_residue_structure", [] { return check_inverse_residue_structure(); }},
      {"left_right_residue", [] { return check_left_right_residue(); }},
      {"oracle_soundness", [&] { return check_oracle_soundness(opts); }},
      {"oracle_product", [&] { return check_oracle_product(opts); }},
      {"minimality", [] { return check_minimality(); }},
  };
  if (opts.mode == TraceMode::Commutative) {
    checks.emplace_back("commutative_limit", [] { return check_commutative_limit(); });
  }
  std::vector<CheckResult> out;
  for (auto& [name, fn] : checks) out.push_back(timed(name, fn));
  return out;
}

}  // namespace ncwres
