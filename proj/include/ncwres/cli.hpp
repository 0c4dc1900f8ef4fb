#pragma once

// Command-line front end.  Exit codes: 0 success, 2 invalid input,
// 3 verification failure.

#include "ncwres/parametrix.hpp"
#include "ncwres/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncwres {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFailed = 3;

struct RunConfig {
  std::string command;
  OperatorSpec spec;
  int power = 1;
  std::optional<int> order;
  TraceMode mode = TraceMode::Noncommutative;
  Side side = Side::Left;
  bool json = false;
  std::uint64_t seed = 1;
  std::string oracle_assignment;
  /// Test mode only: "sphere" corrupts one sphere moment.
  std::string inject_fault;
};

/// Parses argv (argv[0] is the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_wres(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_parametrix(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ncwres
