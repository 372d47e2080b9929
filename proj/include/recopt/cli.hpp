#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"

namespace recopt {

struct BetaRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 0;
};

// One run's inputs, loaded from a JSON config file. Command-line flags
// override individual fields; unknown keys are rejected.
struct RunConfig {
  std::vector<double> utility;
  RevenueParams revenue;
  std::optional<double> beta;
  std::optional<BetaRange> beta_range;
  std::optional<std::vector<double>> raw;  // informational, echoed back only
  std::optional<std::uint64_t> seed;
  LogBase log_base = LogBase::bits;
  std::optional<std::string> output;
  std::uint64_t trials = 1'000'000;
  std::size_t sequence_length = 1'000'000;
};

RunConfig load_config(const std::string& path);

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;      // bad flags, config, or inputs
inline constexpr int kExitInfeasible = 2;  // revenue floor unreachable
inline constexpr int kExitVerify = 3;      // oracle or Monte-Carlo check failed

// Command-line driver. args excludes the program name; results go to out,
// diagnostics to err. Returns one of the exit codes above.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace recopt
