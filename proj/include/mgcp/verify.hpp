#ifndef MGCP_VERIFY_HPP
#define MGCP_VERIFY_HPP

#include <string>
#include <vector>

#include "mgcp/config.hpp"

namespace mgcp {

struct CheckResult {
  std::string name;
  double statistic = 0.0;  // measured deviation, p-value, etc.
  double bound = 0.0;      // the tolerance or significance it is held to
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Known suite names, in canonical execution order.
const std::vector<std::string>& suite_names();

/// Runs one named suite (or "all").  Deterministic given cfg.seed.
/// Throws std::invalid_argument for an unknown suite.
VerificationReport run_suite(const ExperimentConfig& cfg,
                             const std::string& suite);

/// Plain-text report, one line per check, stable across runs.
std::string format_report(const VerificationReport& report);

}  // namespace mgcp

#endif
