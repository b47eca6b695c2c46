#ifndef MGCP_CONFIG_HPP
#define MGCP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "mgcp/fractional.hpp"
#include "mgcp/gcp_core.hpp"

namespace mgcp {

/// Parsed experiment description.  `t` has length d, or length 1 for
/// the multivariate variants (scalar time).
struct ExperimentConfig {
  int k = 1;
  int d = 1;
  Eigen::MatrixXd rates;
  FractionalOrders alpha;
  VariantKind variant = VariantKind::base;
  MultiTime t;
  int n_max = 10;
  long replicates = 100000;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;

  RateMatrix rate_matrix() const { return RateMatrix(rates); }
  double tolerance(const std::string& name, double fallback) const;
};

/// Accepts base | space | space-mv | time | time-mv (and the long
/// names *_multiparameter / *_multivariate).
VariantKind parse_variant(const std::string& tag);
std::string variant_name(VariantKind kind);

/// Loads and validates a JSON config; throws std::runtime_error with a
/// field-level message on any schema violation.
ExperimentConfig load_config(const std::string& path);

ExperimentConfig parse_config_json(const std::string& text);

/// Canonical JSON serialization; serialize(load(x)) is idempotent.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace mgcp

#endif
