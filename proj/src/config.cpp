#include "mgcp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mgcp {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw std::runtime_error("config: " + what);
}

const json& require(const json& j, const char* field) {
  if (!j.contains(field))
    config_error(std::string("missing field '") + field + "'");
  return j.at(field);
}

}  // namespace

double ExperimentConfig::tolerance(const std::string& name,
                                   double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

VariantKind parse_variant(const std::string& tag) {
  if (tag == "base") return VariantKind::base;
  if (tag == "space" || tag == "space_multiparameter")
    return VariantKind::space_multiparameter;
  if (tag == "space-mv" || tag == "space_multivariate")
    return VariantKind::space_multivariate;
  if (tag == "time" || tag == "time_multiparameter")
    return VariantKind::time_multiparameter;
  if (tag == "time-mv" || tag == "time_multivariate")
    return VariantKind::time_multivariate;
  config_error("unknown variant '" + tag + "'");
}

std::string variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::base: return "base";
    case VariantKind::space_multiparameter: return "space";
    case VariantKind::space_multivariate: return "space-mv";
    case VariantKind::time_multiparameter: return "time";
    case VariantKind::time_multivariate: return "time-mv";
  }
  return "base";
}

ExperimentConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be a JSON object");

  ExperimentConfig cfg;
  cfg.k = require(j, "k").get<int>();
  cfg.d = require(j, "d").get<int>();
  if (cfg.k < 1 || cfg.d < 1) config_error("k and d must be positive");

  const json& jr = require(j, "rates");
  if (!jr.is_array() || static_cast<int>(jr.size()) != cfg.k)
    config_error("shape mismatch: rates must have k rows");
  cfg.rates.resize(cfg.k, cfg.d);
  for (int row = 0; row < cfg.k; ++row) {
    const json& jrow = jr.at(row);
    if (!jrow.is_array() || static_cast<int>(jrow.size()) != cfg.d)
      config_error("shape mismatch: each rates row must have d entries");
    for (int col = 0; col < cfg.d; ++col) {
      const double v = jrow.at(col).get<double>();
      if (v < 0.0) config_error("negative rate entry");
      cfg.rates(row, col) = v;
    }
  }

  cfg.alpha = FractionalOrders::Ones(cfg.d);
  if (j.contains("alpha")) {
    const json& ja = j.at("alpha");
    if (!ja.is_array() || static_cast<int>(ja.size()) != cfg.d)
      config_error("shape mismatch: alpha must have length d");
    for (int i = 0; i < cfg.d; ++i) {
      const double a = ja.at(i).get<double>();
      if (!(a > 0.0) || a > 1.0)
        config_error("alpha out of domain: each entry must lie in (0,1]");
      cfg.alpha[i] = a;
    }
  }

  cfg.variant = parse_variant(j.value("variant", std::string("base")));

  const json& jt = require(j, "t");
  const bool scalar_time = is_multivariate(cfg.variant);
  if (jt.is_number()) {
    cfg.t = MultiTime::Constant(scalar_time ? 1 : cfg.d, jt.get<double>());
  } else if (jt.is_array()) {
    const int want = scalar_time ? 1 : cfg.d;
    if (static_cast<int>(jt.size()) != want)
      config_error(scalar_time
                       ? "shape mismatch: multivariate variants take a "
                         "scalar t"
                       : "shape mismatch: t must have length d");
    cfg.t.resize(want);
    for (int i = 0; i < want; ++i) cfg.t[i] = jt.at(i).get<double>();
  } else {
    config_error("t must be a number or an array");
  }
  for (int i = 0; i < cfg.t.size(); ++i)
    if (!(cfg.t[i] >= 0.0)) config_error("t components must be >= 0");

  cfg.n_max = j.value("n_max", 10);
  if (cfg.n_max < 0) config_error("n_max must be >= 0");
  cfg.replicates = j.value("replicates", 100000L);
  if (cfg.replicates < 1) config_error("replicates must be >= 1");
  cfg.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("tolerances")) {
    const json& jtol = j.at("tolerances");
    if (!jtol.is_object()) config_error("tolerances must be an object");
    for (const auto& [key, val] : jtol.items())
      cfg.tolerances[key] = val.get<double>();
  }

  // Row validity is enforced by RateMatrix; surface it here with the
  // field-level prefix.
  try {
    RateMatrix check(cfg.rates);
  } catch (const std::invalid_argument& e) {
    config_error(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["d"] = cfg.d;
  json rows = json::array();
  for (int row = 0; row < cfg.k; ++row) {
    json r = json::array();
    for (int col = 0; col < cfg.d; ++col) r.push_back(cfg.rates(row, col));
    rows.push_back(r);
  }
  j["rates"] = rows;
  json ja = json::array();
  for (int i = 0; i < cfg.alpha.size(); ++i) ja.push_back(cfg.alpha[i]);
  j["alpha"] = ja;
  j["variant"] = variant_name(cfg.variant);
  json jt = json::array();
  for (int i = 0; i < cfg.t.size(); ++i) jt.push_back(cfg.t[i]);
  j["t"] = jt;
  j["n_max"] = cfg.n_max;
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  if (!cfg.tolerances.empty()) j["tolerances"] = cfg.tolerances;
  return j.dump(2);
}

}  // namespace mgcp
