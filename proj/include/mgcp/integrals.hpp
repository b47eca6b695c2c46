#ifndef MGCP_INTEGRALS_HPP
#define MGCP_INTEGRALS_HPP

#include "mgcp/gcp_core.hpp"
#include "mgcp/samplers.hpp"

namespace mgcp {

/// Fractional-integral orders alpha_i > 0 (1 = plain Riemann integral;
/// values above 1 are allowed, unlike subordinator indices) together
/// with the upper corner t and the per-axis quadrature resolution.
struct IntegralSpec {
  Eigen::VectorXd orders;
  MultiTime t;
  int quadrature_nodes = 200;
};

void validate_integral_spec(const IntegralSpec& spec, int dims);

/// E X^alpha(t) in closed form.
double integral_mean(const RateMatrix& rates, const IntegralSpec& spec);

/// Var X^alpha(t) in closed form.
double integral_variance(const RateMatrix& rates, const IntegralSpec& spec);

/// One draw of X^alpha(t) by product quadrature of a simulated path.
/// The d-dimensional kernel integral separates across the
/// sum-of-independent-coordinate-processes construction, so each
/// replicate needs d one-dimensional paths on graded axis grids.
double integral_sample_quadrature(const RateMatrix& rates,
                                  const IntegralSpec& spec, RngStream& rng);

/// Exact-in-law draw of the Riemann integral X(t) through the compound
/// Poisson representation (uniform arrival positions).  Riemann case
/// only; any fractional order is a contract violation.
double integral_sample_compound(const RateMatrix& rates, const MultiTime& t,
                                RngStream& rng);

struct GaussianParams {
  double mean = 0.0;
  double variance = 0.0;
};

/// Small-t limit parameters of X(t).
GaussianParams gaussian_asymptotic_params(const RateMatrix& rates,
                                          const MultiTime& t);

}  // namespace mgcp

#endif
