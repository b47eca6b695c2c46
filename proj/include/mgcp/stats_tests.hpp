#ifndef MGCP_STATS_TESTS_HPP
#define MGCP_STATS_TESTS_HPP

#include <vector>

namespace mgcp {

/// Regularized lower incomplete gamma P(a,x).
double gamma_p(double a, double x);

/// Upper tail Q(a,x) = 1 - P(a,x).
double gamma_q(double a, double x);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

/// Pearson chi-square goodness of fit of observed counts against
/// expected counts (same total).  Cells with expected count below
/// min_expected are pooled into the last kept cell.
TestResult chi_square_gof(const std::vector<double>& observed,
                          const std::vector<double>& expected,
                          double min_expected = 5.0);

/// Two-sample Kolmogorov-Smirnov with the asymptotic p-value.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Anderson-Darling normality test of x against N(mean, variance) with
/// both parameters given (case 0); p-value by Marsaglia's approximation
/// of the A^2 limit law.
TestResult anderson_darling_normal(std::vector<double> x, double mean,
                                   double variance);

/// Standard normal CDF.
double normal_cdf(double z);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::size_t count = 0;
};

SampleMoments sample_moments(const std::vector<double>& x);

/// |empirical - expected| <= band_sigmas * sqrt(draw_variance / n).
bool within_clt_band(double empirical_mean, double expected_mean,
                     double draw_variance, std::size_t n,
                     double band_sigmas = 4.0);

}  // namespace mgcp

#endif
