#ifndef MGCP_FRACTIONAL_HPP
#define MGCP_FRACTIONAL_HPP

#include <functional>

#include "mgcp/gcp_core.hpp"
#include "mgcp/special_functions.hpp"

namespace mgcp {

/// Stability/fractional indices, one per time coordinate, each in (0,1].
/// A component equal to 1 marks the identity-subordinator reduction.
using FractionalOrders = Eigen::VectorXd;

enum class VariantKind {
  base,
  space_multiparameter,
  space_multivariate,
  time_multiparameter,
  time_multivariate,
};

/// Throws std::invalid_argument unless every order lies in (0,1] and the
/// vector has length d.
void validate_orders(const FractionalOrders& orders, int dims);

/// True for the multivariate kinds, which pair with a scalar time.
bool is_multivariate(VariantKind kind);

// --- Time-changed with (multiparameter/multivariate) stable subordinators

/// pgf exp(-sum_i t_i (sum_j lambda_ji (1-u^j))^{alpha_i}).
double space_frac_pgf(const RateMatrix& rates, const MultiTime& t,
                      const FractionalOrders& orders, double u);

/// pmf through the alternating series over Theta(n,d), weighted
/// Omega(k,n_i) and the r_i-series.  Requires every column sum mu_i > 0.
SeriesResult space_frac_pmf(const RateMatrix& rates, const MultiTime& t,
                            const FractionalOrders& orders, int n);

double space_frac_pgf_multivariate(const RateMatrix& rates, double t,
                                   const FractionalOrders& orders, double u);

/// Laplace transform E e^{-eta M}, the pgf at u = e^{-eta}.
double space_frac_laplace_multivariate(const RateMatrix& rates, double t,
                                       const FractionalOrders& orders,
                                       double eta);

SeriesResult space_frac_pmf_multivariate(const RateMatrix& rates, double t,
                                         const FractionalOrders& orders,
                                         int n);

// --- Time-changed with (multiparameter/multivariate) inverse stable
// --- subordinators

/// pgf prod_i E_{alpha_i,1}(-t_i^{alpha_i} sum_j lambda_ji (1-u^j)).
double time_frac_pgf(const RateMatrix& rates, const MultiTime& t,
                     const FractionalOrders& orders, double u);

/// pmf by the Theta(n,d)-outer sum of per-coordinate generalized
/// fractional counting pmfs (three-parameter Mittag-Leffler kernels).
double time_frac_pmf(const RateMatrix& rates, const MultiTime& t,
                     const FractionalOrders& orders, int n);

/// Same quantity through the dual summation order (Omega(k,n) outer,
/// then splitting each jump count across coordinates).  Kept as an
/// independent cross-check of time_frac_pmf.
double time_frac_pmf_omega_order(const RateMatrix& rates, const MultiTime& t,
                                 const FractionalOrders& orders, int n);

/// n-th factorial moment E M(M-1)...(M-n+1).
double time_frac_factorial_moment(const RateMatrix& rates, const MultiTime& t,
                                  const FractionalOrders& orders, int n);

double time_frac_mean(const RateMatrix& rates, const MultiTime& t,
                      const FractionalOrders& orders);
double time_frac_variance(const RateMatrix& rates, const MultiTime& t,
                          const FractionalOrders& orders);

double time_frac_pgf_multivariate(const RateMatrix& rates, double t,
                                  const FractionalOrders& orders, double u);
double time_frac_pmf_multivariate(const RateMatrix& rates, double t,
                                  const FractionalOrders& orders, int n);
double time_frac_mean_multivariate(const RateMatrix& rates, double t,
                                   const FractionalOrders& orders);
double time_frac_variance_multivariate(const RateMatrix& rates, double t,
                                       const FractionalOrders& orders);

/// Caputo fractional derivative of order alpha in (0,1] at t, by
/// product-trapezoid quadrature on a mesh graded toward both the kernel
/// singularity at s = t and the possible f' singularity at s = 0.
/// alpha = 1 returns the central-difference derivative.
double caputo_derivative(const std::function<double(double)>& f, double alpha,
                         double t, int nodes = 2000);

/// |LHS - RHS| of the variant's governing equation at (n, t), maximised
/// over the active coordinates.  Space-fractional variants are checked
/// in pgf domain (at u = 1/2); the time-fractional multiparameter
/// variant through the Caputo quadrature; the base variant through the
/// classical rate ODE.  For multivariate kinds pass t as a length-1
/// vector holding the scalar time.
double governing_system_residual(const RateMatrix& rates, const MultiTime& t,
                                 const FractionalOrders& orders, int n,
                                 VariantKind kind);

}  // namespace mgcp

#endif
