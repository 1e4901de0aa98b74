#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heunwell/potential.hpp"

namespace heunwell::cli {

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on invalid
/// input (bad flags, parameter invariants, unreadable or empty config file)
/// and 2 when a numerical routine fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a key = value file ('#' and ';' start comments). Throws
/// InvalidParameter when the file cannot be read or holds no entries.
std::map<std::string, std::string> read_config_file(const std::string& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool all_pass() const;
};

struct VerifyOptions {
  /// Coefficient of an extra V2/z^2 term fed into the termination identity
  /// only; a nonzero value must make that single check fail.
  double inject_V2 = 0.0;
  /// Run the Numerov cross-check (the slowest check).
  bool run_oracle = true;
};

/// Self-consistency checks for one parameter set. Numerical failures inside a
/// check are recorded as failed checks, never thrown.
VerifyReport verify(const PotentialParams& p, const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);

}  // namespace heunwell::cli
