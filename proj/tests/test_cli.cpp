#include "ncwres/cli.hpp"
#include "ncwres/serialize.hpp"
#include "ncwres/wres.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace ncwres;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncwres");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NCWRES_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("wres of the inverse square") {
  const auto r = run({"wres", "--d", "4", "--power", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "2*pi^2 * t[h^4]\n");
}

TEST_CASE("wres of the flat Laplacian vanishes") {
  const auto r = run({"wres", "--d", "4", "--power", "1", "--flat"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "0\n");
}

TEST_CASE("commutative wres without torsion") {
  const auto r = run({"wres", "--d", "4", "--power", "1", "--mode", "commutative", "--no-torsion"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("commutative: 2*pi^2 * ( -t[d_4(h)^2] - t[d_3(h)^2] - t[d_2(h)^2] - t[d_1(h)^2] )\n") !=
        std::string::npos);
  CHECK(r.out.find("volume-curvature form (1/6) sqrt(g) R: match\n") != std::string::npos);
  // The same operator through a spec file.
  const auto f = run({"wres", "--spec", data("spec_no_torsion.json"), "--mode", "commutative"});
  CHECK(f.code == kExitOk);
  CHECK(f.out == r.out);
}

TEST_CASE("JSON output re-parses to the computed expression") {
  const auto r = run({"wres", "--power", "1", "--include-x", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  OperatorSpec spec;
  spec.include_x = true;
  CHECK(trace_expression_from_json(j.at("expression")) == wres_inverse_power(spec, 1, 2));
  CHECK(operator_spec_from_json(j.at("operator")).include_x);
  CHECK(j.at("order") == 2);
}

TEST_CASE("parametrix output") {
  const auto r0 = run({"parametrix", "--order", "0"});
  CHECK(r0.code == kExitOk);
  CHECK(r0.out.rfind("b0:\ndegree -2:\n  (h^2) * |xi|^-2\n", 0) == 0);

  const auto flat = run({"parametrix", "--order", "2", "--flat"});
  CHECK(flat.code == kExitOk);
  CHECK(flat.out == "b0:\ndegree -2:\n  (1) * |xi|^-2\nb1:\n0\nb2:\n0\ndefect degrees: none\n");

  const auto j = Json::parse(run({"parametrix", "--order", "1", "--format", "json"}).out);
  REQUIRE(j.at("b").size() == 2);
  const auto b1 = symbol_from_json(j.at("b")[1], 4);
  CHECK(b1 == parametrix_terms(laplace_symbol(OperatorSpec{}), 1).b[1]);
  CHECK(j.at("defect_degrees") == Json::array({-2, -3, -4}));
}

TEST_CASE("invalid input exits with 2") {
  CHECK(run({"wres", "--d", "3"}).code == kExitInvalid);
  CHECK(run({"wres", "--order", "1"}).code == kExitInvalid);
  CHECK(run({"wres", "--power", "3"}).code == kExitInvalid);
  CHECK(run({"wres", "--bogus"}).code == kExitInvalid);
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"wres", "--spec", data("missing.json")}).code == kExitInvalid);
  const auto bad = run({"wres", "--spec", data("malformed.json")});
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(run({"verify", "--inject-fault", "nothing"}).code == kExitInvalid);
  CHECK(run({"verify", "--d", "6"}).code == kExitInvalid);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("oracle check") {
  const auto r = run({"oracle-check", "--seed", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("oracle check passed") != std::string::npos);
  const auto f = run({"oracle-check", "--oracle-assignment", data("assignment.json"), "--format", "json"});
  CHECK(f.code == kExitOk);
  const auto j = Json::parse(f.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("soundness_gap").get<double>() < 1e-8);
  CHECK(j.at("product_l1_gap").get<double>() < 1e-8);
  // The file's theta is 4 x 4.
  CHECK(run({"oracle-check", "--d", "2", "--oracle-assignment", data("assignment.json")}).code == kExitInvalid);
}

TEST_CASE("identical config and seed give byte-identical output") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"wres", "--power", "1", "--format", "json"},
        std::vector<std::string>{"parametrix", "--order", "1"},
        std::vector<std::string>{"oracle-check", "--seed", "11", "--format", "json"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("NCWRES_SEED sets the default seed") {
  ::setenv("NCWRES_SEED", "17", 1);
  const auto env = run({"oracle-check", "--format", "json"});
  ::setenv("NCWRES_SEED", "not-a-number", 1);
  const auto broken = run({"oracle-check"});
  ::unsetenv("NCWRES_SEED");
  const auto flag = run({"oracle-check", "--seed", "17", "--format", "json"});
  CHECK(env.code == kExitOk);
  CHECK(env.out == flag.out);
  CHECK(broken.code == kExitInvalid);
}

TEST_CASE("verify: default run passes, a corrupted sphere table fails") {
  const auto ok = run({"verify", "--format", "json"});
  CHECK(ok.code == kExitOk);
  const auto j = Json::parse(ok.out);
  CHECK(j.at("pass") == true);
  bool has_minimality = false;
  for (const auto& c : j.at("checks")) {
    CHECK(c.at("seconds").get<double>() >= 0);
    if (c.at("name") == "minimality") {
      has_minimality = true;
      CHECK(c.at("detail").at("minimal") == false);
    }
  }
  CHECK(has_minimality);

  const auto bad = run({"verify", "--inject-fault", "sphere", "--mode", "commutative", "--format", "json"});
  CHECK(bad.code == kExitVerifyFailed);
  const auto k = Json::parse(bad.out);
  CHECK(k.at("pass") == false);
  for (const auto& c : k.at("checks")) {
    if (c.at("name") == "trace_property") CHECK(c.at("pass") == false);
    if (c.at("name") == "commutative_limit") CHECK(c.at("pass") == true);
  }
}
