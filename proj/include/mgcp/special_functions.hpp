#ifndef MGCP_SPECIAL_FUNCTIONS_HPP
#define MGCP_SPECIAL_FUNCTIONS_HPP

namespace mgcp {

/// Parameters of the three-parameter Mittag-Leffler function
/// E^gamma_{alpha,beta}.  All three must be strictly positive.
struct MlfParams {
  double alpha;
  double beta;
  double gamma;
};

/// Result of a truncated series evaluation.  tail_bound is an upper
/// bound on the absolute truncation error under the stopping rule in
/// effect; converged is false when the term budget ran out before the
/// stopping rule was met.
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

/// E^gamma_{alpha,beta}(x) = sum_{j>=0} Gamma(j+gamma) x^j
///                           / (Gamma(gamma) j! Gamma(j alpha + beta)).
///
/// Direct power series with compensated summation for |x| <= 30; for
/// alpha == 1 and x < 0 the series is rewritten through the Kummer
/// transformation so the summand stays positive and no cancellation
/// occurs (this makes the exp reduction alpha=beta=gamma=1 exact).
/// Arguments with |x| > 30 are reported as non-convergent.
SeriesResult mlf3(const MlfParams& params, double x);

/// log Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

/// Generalized binomial coefficient alpha (alpha-1) ... (alpha-r+1) / r!.
double generalized_binomial(double alpha, int r);

/// Falling factorial a (a-1) ... (a-m+1); equals Gamma(a+1)/Gamma(a+1-m)
/// for non-negative integer m, valid across the Gamma poles.
double falling_factorial(double a, int m);

}  // namespace mgcp

#endif
