#include "ncwres/cli.hpp"

#include "ncwres/report.hpp"
#include "ncwres/sampling.hpp"
#include "ncwres/serialize.hpp"
#include "ncwres/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace ncwres {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_complex(const Complex& c) {
  return format_double(c.real()) + (c.imag() < 0 ? " - " : " + ") + format_double(std::abs(c.imag())) + "i";
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }
const char* mode_name(TraceMode m) { return m == TraceMode::Commutative ? "commutative" : "noncommutative"; }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NCWRES_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("NCWRES_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

Json spec_json(const RunConfig& cfg) {
  return Json{{"command", cfg.command}, {"operator", to_json(cfg.spec)}, {"mode", mode_name(cfg.mode)},
              {"side", side_name(cfg.side)}};
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int cmd_wres(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int d = cfg.spec.d;
  const int order = cfg.order.value_or(cfg.power == 1 ? d - 2 : std::max(0, d - 4));
  const TraceExpression w = wres_inverse_power(cfg.spec, cfg.power, order, cfg.side);
  const Scalar prefactor = sphere_volume(d);
  const std::string text = render_with_prefactor(w, prefactor);

  Json j = spec_json(cfg);
  j["power"] = cfg.power;
  j["order"] = order;
  j["seed"] = cfg.seed;
  j["expression"] = to_json(w, d);
  j["text"] = text;

  bool verdict_ok = true;
  std::vector<std::string> lines{text};
  if (cfg.mode == TraceMode::Commutative) {
    const TraceExpression comm = commutative_specialize(w);
    const std::string comm_text = render_with_prefactor(comm, prefactor);
    j["commutative"] = {{"expression", to_json(comm, d)}, {"text", comm_text}};
    lines.push_back("commutative: " + comm_text);
    if (d == 4 && cfg.power == 1 && !cfg.spec.has_torsion()) {
      // (1/6) sqrt(g) R with sqrt(g) = h^4, R = 6 h^-3 sum_a delta_aa(h)
      TraceExpression curvature;
      for (int a = 1; a <= d; ++a) {
        curvature.add({Letter::h(), derived(derived(Letter::h(), a), a)}, Scalar(2, 2));
      }
      if (cfg.spec.flat) curvature = TraceExpression{};
      verdict_ok = commutative_equal(w, curvature);
      j["curvature_match"] = verdict_ok;
      lines.push_back(std::string("volume-curvature form (1/6) sqrt(g) R: ") + (verdict_ok ? "match" : "MISMATCH"));
    }
  }
  if (cfg.json) {
    print_json(out, j);
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
  if (!verdict_ok) {
    err << "commutative residue does not match the volume-curvature form\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_parametrix(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const int order = cfg.order.value_or(2);
  const auto pr = parametrix_terms(laplace_symbol(cfg.spec), order, cfg.side);
  std::vector<int> surviving;
  for (auto it = pr.defect.components().rbegin(); it != pr.defect.components().rend(); ++it) {
    surviving.push_back(it->first);
  }
  if (cfg.json) {
    Json j = spec_json(cfg);
    j["order"] = order;
    Json bs = Json::array();
    for (const auto& b : pr.b) bs.push_back(to_json(b));
    j["b"] = bs;
    j["defect"] = to_json(pr.defect);
    j["defect_degrees"] = surviving;
    print_json(out, j);
    return kExitOk;
  }
  for (std::size_t k = 0; k < pr.b.size(); ++k) {
    out << "b" << k << ":\n";
    const std::string s = to_string(pr.b[k]);
    out << s << (s.back() == '\n' ? "" : "\n");
  }
  out << "defect degrees:";
  if (surviving.empty()) out << " none";
  for (int k : surviving) out << " " << k;
  out << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.spec.d != 4) throw std::invalid_argument("verify runs at d = 4");
  if (!cfg.inject_fault.empty() && cfg.inject_fault != "sphere") {
    throw std::invalid_argument("unknown fault '" + cfg.inject_fault + "'");
  }
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.mode = cfg.mode;
  opts.sphere_fault = cfg.inject_fault == "sphere";
  const auto results = run_verification(opts);
  bool all = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    checks.push_back({{"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
  }
  if (cfg.json) {
    Json j = spec_json(cfg);
    j["seed"] = cfg.seed;
    j["checks"] = checks;
    j["pass"] = all;
    print_json(out, j);
  } else {
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.name << " " << std::fixed
          << std::setprecision(3) << r.seconds << " s  " << r.detail.dump() << "\n";
    }
    out << (all ? "all checks passed" : "verification FAILED") << "\n";
  }
  if (!all) {
    err << "verification failed\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int d = cfg.spec.d;
  Assignment asg = cfg.oracle_assignment.empty()
                       ? random_assignment(oracle_thetas(d).back(), cfg.seed,
                                           RandomAssignmentOptions{3, 0.1, 2, 1e-10, true, true})
                       : assignment_from_json(load_json_file(cfg.oracle_assignment));
  if (asg.theta.dim() != d) throw std::invalid_argument("assignment dimension differs from --d");
  constexpr double tol = 1e-8;

  const auto b = parametrix_terms(laplace_symbol(cfg.spec), cfg.order.value_or(d - 2), cfg.side, false).sum();
  const SphereIntegralTable table(d);
  const auto raw = wodzicki_residue_raw(b, table);
  const auto reduced = ibp_reduce(raw);
  const Complex raw_value = evaluate_trace_expression(raw, asg);
  const Complex reduced_value = evaluate_trace_expression(reduced, asg);
  const double soundness = std::abs(raw_value - reduced_value);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double product = 0;
  for (int i = 0; i < 3; ++i) {
    RandomSymbolOptions po;
    po.top_degree = 1;
    po.torsion = cfg.spec.has_torsion();
    po.include_x = cfg.spec.has_x();
    RandomSymbolOptions qo = po;
    qo.top_degree = 0;
    const Symbol p = random_symbol(d, rng(), po);
    const Symbol q = random_symbol(d, rng(), qo);
    // Same theta, but a small assignment: see product_assignment_options.
    auto small_opts = product_assignment_options();
    small_opts.torsion = po.torsion;
    small_opts.include_x = po.include_x;
    const auto small = random_assignment(asg.theta, rng(), small_opts);
    std::vector<double> xi(static_cast<std::size_t>(d));
    for (auto& v : xi) v = coord(rng);
    product = std::max(product, l1_distance(evaluate_symbol_at_xi(symbol_product(p, q, -2), small, xi),
                                            product_gamma_sum_at_xi(p, q, small, xi, -2)));
  }
  const bool pass = soundness < tol && product < tol && asg.residual < tol;

  if (cfg.json) {
    Json j = spec_json(cfg);
    j["seed"] = cfg.seed;
    j["neumann_residual"] = asg.residual;
    j["residue_raw"] = {raw_value.real(), raw_value.imag()};
    j["residue_reduced"] = {reduced_value.real(), reduced_value.imag()};
    j["soundness_gap"] = soundness;
    j["product_l1_gap"] = product;
    j["tolerance"] = tol;
    j["pass"] = pass;
    print_json(out, j);
  } else {
    out << "h^-1 residual: " << format_double(asg.residual) << "\n";
    out << "Wres(Delta^-1) raw: " << format_complex(raw_value) << "\n";
    out << "Wres(Delta^-1) reduced: " << format_complex(reduced_value) << "\n";
    out << "soundness gap: " << format_double(soundness) << "\n";
    out << "product gap: " << format_double(product) << "\n";
    out << (pass ? "oracle check passed" : "oracle check FAILED") << "\n";
  }
  if (!pass) {
    err << "oracle check failed (tolerance " << format_double(tol) << ")\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wodzicki residues of Laplace-type operators on the noncommutative torus", "ncwres"};
  app.require_subcommand(1);

  RunConfig cfg;
  int d = 4;
  std::string mode = "noncommutative";
  std::string side = "left";
  std::string format = "text";
  std::string spec_file;
  bool flat = false;
  bool no_torsion = false;
  bool include_x = false;
  std::uint64_t seed = 0;
  int order = 0;

  std::vector<CLI::App*> subs{app.add_subcommand("wres", "Residue of Delta^-1 or Delta^-2 as a trace expression"),
                              app.add_subcommand("parametrix", "Parametrix terms b_0..b_n and the composition defect"),
                              app.add_subcommand("verify", "Run the property suite"),
                              app.add_subcommand("oracle-check", "Cross-check against the Fourier model")};
  for (auto* sub : subs) {
    sub->add_option("--d", d, "Dimension (even)")->check(CLI::Range(2, kMaxDim));
    sub->add_option("--power", cfg.power, "Inverse power (1 or 2)")->check(CLI::IsMember({1, 2}));
    sub->add_option("--order", order, "Parametrix order")->check(CLI::NonNegativeNumber);
    sub->add_option("--mode", mode, "Trace mode")->check(CLI::IsMember({"noncommutative", "commutative"}));
    sub->add_option("--side", side, "Parametrix side")->check(CLI::IsMember({"left", "right"}));
    sub->add_flag("--flat", flat, "h = 1, T = X = 0");
    sub->add_flag("--no-torsion", no_torsion, "Drop the T_a terms");
    sub->add_flag("--include-x", include_x, "Keep the potential X");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", seed, "Seed for random checks (default: NCWRES_SEED or 1)");
    sub->add_option("--spec", spec_file, "OperatorSpec JSON file")->check(CLI::ExistingFile);
    sub->add_option("--oracle-assignment", cfg.oracle_assignment, "Assignment JSON file")->check(CLI::ExistingFile);
  }
  subs[2]->add_option("--inject-fault", cfg.inject_fault, "Test mode: corrupt a table (sphere)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    CLI::App* sub = nullptr;
    for (auto* s : subs) {
      if (s->parsed()) sub = s;
    }
    cfg.command = sub->get_name();
    if (!spec_file.empty()) cfg.spec = operator_spec_from_json(load_json_file(spec_file));
    if (spec_file.empty() || sub->count("--d") > 0) cfg.spec.d = d;
    if (flat) cfg.spec.flat = true;
    if (no_torsion) cfg.spec.torsion = false;
    if (include_x) cfg.spec.include_x = true;
    cfg.spec.validate();
    if (sub->count("--order") > 0) cfg.order = order;
    cfg.mode = mode == "commutative" ? TraceMode::Commutative : TraceMode::Noncommutative;
    cfg.side = side == "right" ? Side::Right : Side::Left;
    cfg.json = format == "json";
    cfg.seed = sub->count("--seed") > 0 ? seed : default_seed();

    if (cfg.command == "wres") return cmd_wres(cfg, out, err);
    if (cfg.command == "parametrix") return cmd_parametrix(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    return cmd_oracle_check(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace ncwres
