#pragma once

// The property suite behind `ncwres verify`: every check is self-contained,
// seeded, and reports a JSON detail block.

#include "ncwres/serialize.hpp"
#include "ncwres/wres.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ncwres {

struct CheckResult {
  std::string name;
  bool pass = false;
  double seconds = 0;
  Json detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  TraceMode mode = TraceMode::Noncommutative;
  /// Corrupt one sphere moment (test mode).
  bool sphere_fault = false;
  int trace_pairs = 20;
  int oracle_assignments = 5;
  int product_cases = 10;
};

/// Sphere moment table, optionally with the test-mode fault at xi_1^2.
SphereIntegralTable verification_table(int d, bool fault);

CheckResult check_trace_property(const VerifyOptions& opts);
CheckResult check_sphere_derivative_lemma();
CheckResult check_sphere_identities(const VerifyOptions& opts);
CheckResult check_operator_assembly();
CheckResult check_composition_defect();
CheckResult check_closed_forms();
CheckResult check_inverse_square_residue();
CheckResult check_inverse_residue_structure();
CheckResult check_left_right_residue();
CheckResult check_oracle_soundness(const VerifyOptions& opts);
CheckResult check_oracle_product(const VerifyOptions& opts);
CheckResult check_minimality();
CheckResult check_commutative_limit();

/// Runs the checks in declared order; the commutative limit check is added
/// in commutative mode.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// Small, tightly inverted assignments for the product check: products of
/// many h^-1 letters amplify the Neumann truncation and blow up supports.
RandomAssignmentOptions product_assignment_options();

/// The three theta matrices of the oracle checks: zero, rational, irrational.
std::vector<ThetaMatrix> oracle_thetas(int d);

}  // namespace ncwres
