#include "mgcp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgcp/csv.hpp"
#include "mgcp/integrals.hpp"
#include "mgcp/samplers.hpp"
#include "mgcp/stats_tests.hpp"

namespace mgcp {

namespace {

// Fixed stream ids keep every check on its own independent substream,
// so reports are reproducible and reordering-insensitive.
enum StreamId : std::uint64_t {
  kStreamMoments = 101,
  kStreamDeterminism = 102,
  kStreamStable = 103,
  kStreamInverseStable = 104,
  kStreamVariantLaw = 105,
  kStreamCompound = 106,
  kStreamQuadrature = 107,
};

// The scalar-time variants store t as a single entry; base-process
// checks need the expanded vector.
MultiTime full_time(const ExperimentConfig& cfg) {
  if (is_multivariate(cfg.variant)) return MultiTime::Constant(cfg.d, cfg.t[0]);
  return cfg.t;
}

void add(VerificationReport& rep, const std::string& name, double statistic,
         double bound, bool pass) {
  rep.checks.push_back({name, statistic, bound, pass});
}

// statistic must stay at or below bound.
void add_max(VerificationReport& rep, const std::string& name,
             double statistic, double bound) {
  add(rep, name, statistic, bound, statistic <= bound);
}

// statistic must stay at or above bound (p-values).
void add_min(VerificationReport& rep, const std::string& name,
             double statistic, double bound) {
  add(rep, name, statistic, bound, statistic >= bound);
}

double draws_cap(const ExperimentConfig& cfg, long cap) {
  return static_cast<double>(std::min(cfg.replicates, cap));
}

void suite_normalization(const ExperimentConfig& cfg,
                         VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  const MultiTime t = full_time(cfg);
  const int nstar = truncation_index(rates, t);
  const PmfTable table = pmf_convolution(rates, t, nstar);
  const double tol = cfg.tolerance("normalization", 1e-9);
  add_max(rep, "base_mass_deficit", 1.0 - table.mass_accounted, tol);

  double worst = 0.0;
  for (int n = 0; n <= table.n_max(); ++n)
    worst = std::min(worst, table.probs[n]);
  add_min(rep, "base_pmf_nonnegative", worst, 0.0);

  if (cfg.variant == VariantKind::time_multiparameter ||
      cfg.variant == VariantKind::time_multivariate) {
    double mass = 0.0, least = 0.0;
    for (int n = 0; n <= cfg.n_max; ++n) {
      const double p = time_frac_pmf(rates, t, cfg.alpha, n);
      mass += p;
      least = std::min(least, p);
    }
    add_max(rep, "time_frac_partial_mass", mass, 1.0 + 1e-9);
    add_min(rep, "time_frac_pmf_nonnegative", least, -1e-12);
  }
}

void suite_equivalence(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  const MultiTime t = full_time(cfg);
  const int n_hi = std::min(cfg.n_max, 20);
  const PmfTable conv = pmf_convolution(rates, t, n_hi);
  const PmfTable sum = pmf_sum_of_gcps(rates, t, n_hi);
  double worst = 0.0;
  for (int n = 0; n <= n_hi; ++n) {
    const double direct = pmf_direct(rates, t, n);
    worst = std::max(worst, std::fabs(direct - conv.probs[n]));
    worst = std::max(worst, std::fabs(direct - sum.probs[n]));
  }
  add_max(rep, "pmf_three_route_agreement", worst,
          cfg.tolerance("equivalence", 1e-12));

  double worst_tf = 0.0;
  for (int n = 0; n <= std::min(cfg.n_max, 6); ++n)
    worst_tf = std::max(
        worst_tf,
        std::fabs(time_frac_pmf(rates, t, cfg.alpha, n) -
                  time_frac_pmf_omega_order(rates, t, cfg.alpha, n)));
  add_max(rep, "time_frac_dual_route_agreement", worst_tf,
          cfg.tolerance("equivalence_time", 1e-10));
}

void suite_moments(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  const MultiTime t = full_time(cfg);
  const double mu = mean(rates, t);
  const double var = variance(rates, t);

  const long n = static_cast<long>(draws_cap(cfg, 100000));
  RngStream rng(cfg.seed, kStreamMoments);
  std::vector<double> x;
  x.reserve(n);
  for (long r = 0; r < n; ++r)
    x.push_back(static_cast<double>(sample_mgcp(rates, t, rng)));
  const SampleMoments m = sample_moments(x);
  add(rep, "mc_mean_band", std::fabs(m.mean - mu),
      4.0 * std::sqrt(var / n), within_clt_band(m.mean, mu, var, n));

  double mu4 = 0.0;
  for (double v : x) {
    const double c = v - m.mean;
    mu4 += c * c * c * c;
  }
  mu4 /= n;
  const double var_band =
      4.0 * std::sqrt(std::max(mu4 - var * var, 0.0) / n);
  add_max(rep, "mc_variance_band", std::fabs(m.variance - var),
          std::max(var_band, 1e-12));

  const int nstar = truncation_index(rates, t);
  const PmfTable table = pmf_convolution(rates, t, nstar);
  double worst = 0.0;
  for (double u : {0.5, -0.5}) {
    double s = 0.0;
    for (int k = 0; k <= table.n_max(); ++k)
      s += std::pow(u, k) * table.probs[k];
    worst = std::max(worst, std::fabs(s - pgf(rates, t, u)));
  }
  add_max(rep, "pgf_series_consistency", worst,
          cfg.tolerance("pgf_consistency", 1e-9));
}

void suite_reductions(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  const MultiTime t = full_time(cfg);
  const FractionalOrders ones = FractionalOrders::Ones(cfg.d);
  const double tol = cfg.tolerance("reductions", 1e-9);
  const int n_hi = std::min(cfg.n_max, 12);

  double worst_space = 0.0, worst_time = 0.0;
  for (int n = 0; n <= n_hi; ++n) {
    const double base = pmf_direct(rates, t, n);
    worst_space = std::max(
        worst_space, std::fabs(space_frac_pmf(rates, t, ones, n).value - base));
    worst_time = std::max(
        worst_time, std::fabs(time_frac_pmf(rates, t, ones, n) - base));
  }
  add_max(rep, "space_pmf_identity_orders", worst_space, tol);
  add_max(rep, "time_pmf_identity_orders", worst_time, tol);

  const double u = 0.5;
  const double base_pgf = pgf(rates, t, u);
  add_max(rep, "space_pgf_identity_orders",
          std::fabs(space_frac_pgf(rates, t, ones, u) - base_pgf), 1e-12);
  add_max(rep, "time_pgf_identity_orders",
          std::fabs(time_frac_pgf(rates, t, ones, u) - base_pgf), tol);
  add_max(rep, "time_moments_identity_orders",
          std::max(std::fabs(time_frac_mean(rates, t, ones) - mean(rates, t)),
                   std::fabs(time_frac_variance(rates, t, ones) -
                             variance(rates, t))),
          tol);
}

void suite_governing(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  const MultiTime t = full_time(cfg);
  const int n = std::min(cfg.n_max, 3);
  add_max(rep, "base_ode_residual",
          governing_system_residual(rates, t, cfg.alpha, n,
                                    VariantKind::base),
          cfg.tolerance("governing_base", 1e-6));
  add_max(rep, "space_pgf_ode_residual",
          governing_system_residual(rates, t, cfg.alpha, n,
                                    VariantKind::space_multiparameter),
          cfg.tolerance("governing_space", 1e-6));
  bool positive_t = true;
  for (int i = 0; i < t.size(); ++i) positive_t = positive_t && t[i] > 0.0;
  if (positive_t)
    add_max(rep, "time_caputo_residual",
            governing_system_residual(rates, t, cfg.alpha, n,
                                      VariantKind::time_multiparameter),
            cfg.tolerance("governing_time", 1e-3));
  if (cfg.variant == VariantKind::space_multivariate)
    add_max(rep, "space_mv_pgf_ode_residual",
            governing_system_residual(rates, cfg.t, cfg.alpha, n,
                                      VariantKind::space_multivariate),
            cfg.tolerance("governing_space", 1e-6));
}

void suite_samplers(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();

  RngStream a(cfg.seed, kStreamDeterminism), b(cfg.seed, kStreamDeterminism);
  bool identical = true;
  for (int i = 0; i < 1000; ++i)
    identical = identical && a.next_u64() == b.next_u64();
  add(rep, "stream_determinism", identical ? 0.0 : 1.0, 0.0, identical);

  double alpha = 0.5;
  for (int i = 0; i < cfg.alpha.size(); ++i)
    if (cfg.alpha[i] < 1.0) {
      alpha = cfg.alpha[i];
      break;
    }
  const long n = static_cast<long>(draws_cap(cfg, 200000));
  {
    RngStream rng(cfg.seed, kStreamStable);
    std::vector<double> draws;
    draws.reserve(n);
    for (long r = 0; r < n; ++r)
      draws.push_back(sample_stable(alpha, 1.0, rng));
    double worst_gap = 0.0, worst_band = 0.0;
    bool pass = true;
    for (double w : {0.5, 1.0, 2.0}) {
      std::vector<double> lap(draws.size());
      for (std::size_t r = 0; r < draws.size(); ++r)
        lap[r] = std::exp(-w * draws[r]);
      const SampleMoments m = sample_moments(lap);
      const double target = std::exp(-std::pow(w, alpha));
      const double band = 4.0 * std::sqrt(m.variance / n);
      if (std::fabs(m.mean - target) > worst_gap) {
        worst_gap = std::fabs(m.mean - target);
        worst_band = band;
      }
      pass = pass && std::fabs(m.mean - target) <= band;
    }
    add(rep, "stable_laplace_band", worst_gap, worst_band, pass);
  }
  {
    RngStream rng(cfg.seed, kStreamInverseStable);
    std::vector<double> draws;
    draws.reserve(n);
    for (long r = 0; r < n; ++r)
      draws.push_back(sample_inverse_stable(alpha, 1.0, rng));
    const SampleMoments m = sample_moments(draws);
    const double target = 1.0 / std::tgamma(alpha + 1.0);
    add(rep, "inverse_stable_mean_band", std::fabs(m.mean - target),
        4.0 * std::sqrt(m.variance / n),
        within_clt_band(m.mean, target, m.variance, n));
  }

  // Empirical law of the configured variant against its analytic pmf.
  {
    const long draws = static_cast<long>(draws_cap(cfg, 100000));
    RngStream rng(cfg.seed, kStreamVariantLaw);
    const int n_hi = std::min(cfg.n_max, 10);
    std::vector<double> observed(n_hi + 2, 0.0);
    for (long r = 0; r < draws; ++r) {
      const long v = sample_variant(rates, cfg.t, cfg.alpha, cfg.variant, rng);
      observed[std::min<long>(v, n_hi + 1)] += 1.0;
    }
    const MultiTime t = full_time(cfg);
    std::vector<double> expected(n_hi + 2, 0.0);
    double mass = 0.0;
    for (int k = 0; k <= n_hi; ++k) {
      double p = 0.0;
      switch (cfg.variant) {
        case VariantKind::base:
          p = pmf_direct(rates, t, k);
          break;
        case VariantKind::space_multiparameter:
        case VariantKind::space_multivariate:
          p = space_frac_pmf(rates, t, cfg.alpha, k).value;
          break;
        case VariantKind::time_multiparameter:
        case VariantKind::time_multivariate:
          p = time_frac_pmf(rates, t, cfg.alpha, k);
          break;
      }
      expected[k] = p * draws;
      mass += p;
    }
    expected[n_hi + 1] = std::max(1.0 - mass, 0.0) * draws;
    const TestResult gof = chi_square_gof(observed, expected);
    add_min(rep, "variant_law_chisq_p", gof.p_value,
            cfg.tolerance("significance", 1e-3));
  }
}

void suite_integrals(const ExperimentConfig& cfg, VerificationReport& rep) {
  const RateMatrix rates = cfg.rate_matrix();
  MultiTime t = full_time(cfg);
  for (int i = 0; i < t.size(); ++i)
    if (t[i] == 0.0) t[i] = 1.0;  // the zero-time integral is trivially 0
  IntegralSpec spec;
  spec.orders = Eigen::VectorXd::Ones(cfg.d);
  spec.t = t;
  spec.quadrature_nodes = 200;
  const double imean = integral_mean(rates, spec);
  const double ivar = integral_variance(rates, spec);

  const long nc = static_cast<long>(draws_cap(cfg, 20000));
  RngStream rng_c(cfg.seed, kStreamCompound);
  std::vector<double> compound;
  compound.reserve(nc);
  for (long r = 0; r < nc; ++r)
    compound.push_back(integral_sample_compound(rates, t, rng_c));
  const SampleMoments mc = sample_moments(compound);
  add(rep, "compound_mean_band", std::fabs(mc.mean - imean),
      4.0 * std::sqrt(ivar / nc), within_clt_band(mc.mean, imean, ivar, nc));
  double mu4 = 0.0;
  for (double v : compound) {
    const double c = v - mc.mean;
    mu4 += c * c * c * c;
  }
  mu4 /= nc;
  add_max(rep, "compound_variance_band", std::fabs(mc.variance - ivar),
          4.0 * std::sqrt(std::max(mu4 - ivar * ivar, 0.0) / nc) + 1e-12);

  const long nq = static_cast<long>(draws_cap(cfg, 5000));
  RngStream rng_q(cfg.seed, kStreamQuadrature);
  std::vector<double> quad;
  quad.reserve(nq);
  for (long r = 0; r < nq; ++r)
    quad.push_back(integral_sample_quadrature(rates, spec, rng_q));
  const SampleMoments mq = sample_moments(quad);
  add(rep, "quadrature_mean_band", std::fabs(mq.mean - imean),
      4.0 * std::sqrt(ivar / nq), within_clt_band(mq.mean, imean, ivar, nq));

  const TestResult ks = ks_two_sample(compound, quad);
  add_min(rep, "compound_vs_quadrature_ks_p", ks.p_value,
          cfg.tolerance("significance", 1e-3));

  if (cfg.d == 1) {
    const GaussianParams g = gaussian_asymptotic_params(rates, t);
    add_max(rep, "gaussian_params_riemann_identity",
            std::max(std::fabs(g.mean - imean), std::fabs(g.variance - ivar)),
            1e-12);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "normalization", "equivalence", "moments",   "reductions",
      "governing",     "samplers",    "integrals",
  };
  return names;
}

VerificationReport run_suite(const ExperimentConfig& cfg,
                             const std::string& suite) {
  VerificationReport rep;
  rep.suite = suite;
  auto dispatch = [&](const std::string& name) {
    if (name == "normalization")
      suite_normalization(cfg, rep);
    else if (name == "equivalence")
      suite_equivalence(cfg, rep);
    else if (name == "moments")
      suite_moments(cfg, rep);
    else if (name == "reductions")
      suite_reductions(cfg, rep);
    else if (name == "governing")
      suite_governing(cfg, rep);
    else if (name == "samplers")
      suite_samplers(cfg, rep);
    else if (name == "integrals")
      suite_integrals(cfg, rep);
    else
      throw std::invalid_argument("unknown suite '" + name + "'");
  };
  if (suite == "all")
    for (const auto& name : suite_names()) dispatch(name);
  else
    dispatch(suite);
  return rep;
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream out;
  out << "suite: " << report.suite << "\n";
  for (const auto& c : report.checks)
    out << (c.pass ? "PASS" : "FAIL") << " " << c.name
        << " statistic=" << format_real(c.statistic)
        << " bound=" << format_real(c.bound) << "\n";
  out << "overall: " << (report.overall() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace mgcp
