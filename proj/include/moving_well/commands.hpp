#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "moving_well/config.hpp"

namespace moving_well::cli {

/// Process exit codes. No other values are ever returned.
enum ExitCode : int {
  kOk = 0,
  kInvalidConfig = 1,
  kIoFailure = 2,
  kHorizonExceeded = 3,
  kAuditFailed = 4,
};

enum class Method { analytic, fdm, both };

Method parse_method(const std::string& name);

/// Writes modes.csv, per-snapshot density CSVs (and SVGs when requested) for
/// the configured mode, and resolved_config.json.
void cmd_modes(const RunConfig& config);

struct EvolveOutcome {
  double min_fidelity = 1.0;  // only meaningful for Method::both
  bool fidelity_ok = true;
};

/// Propagates the configured initial state with the chosen propagator(s).
EvolveOutcome cmd_evolve(const RunConfig& config, Method method);

struct VerifyOutcome {
  nlohmann::json report;
  bool all_pass = false;
};

/// Runs every audit and returns the report; writes verify_report.json.
VerifyOutcome cmd_verify(const RunConfig& config);

/// Full command dispatch with the exit-code contract. Messages go to `err`.
int run(const std::string& command, const std::string& config_path, const std::optional<std::string>& method,
        const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err);

}  // namespace moving_well::cli
