#include "mgcp/integrals.hpp"

#include <cmath>
#include <stdexcept>

namespace mgcp {

namespace {

// Product over r != skip of t_r^{p(alpha_r)} style factors.
double product_except(const Eigen::VectorXd& factors, int skip) {
  double p = 1.0;
  for (int r = 0; r < factors.size(); ++r)
    if (r != skip) p *= factors[r];
  return p;
}

}  // namespace

void validate_integral_spec(const IntegralSpec& spec, int dims) {
  if (spec.orders.size() != dims)
    throw std::invalid_argument("IntegralSpec: orders dimension mismatch");
  for (int i = 0; i < dims; ++i)
    if (!(spec.orders[i] > 0.0) || !std::isfinite(spec.orders[i]))
      throw std::invalid_argument("IntegralSpec: orders must be > 0");
  validate_multitime(spec.t, dims);
  if (spec.quadrature_nodes < 2)
    throw std::invalid_argument("IntegralSpec: quadrature_nodes >= 2");
}

double integral_mean(const RateMatrix& rates, const IntegralSpec& spec) {
  const int d = rates.dims();
  validate_integral_spec(spec, d);
  Eigen::VectorXd kernel_mass(d);  // t_i^{a_i} / Gamma(a_i + 1)
  for (int i = 0; i < d; ++i)
    kernel_mass[i] =
        std::pow(spec.t[i], spec.orders[i]) / std::tgamma(spec.orders[i] + 1.0);
  double m = 0.0;
  for (int l = 0; l < d; ++l) {
    const double axis = std::pow(spec.t[l], spec.orders[l] + 1.0) /
                        std::tgamma(spec.orders[l] + 2.0);
    double jsum = 0.0;
    for (int j = 0; j < rates.jump_count(); ++j)
      jsum += (j + 1) * rates.rates()(j, l);
    m += jsum * product_except(kernel_mass, l) * axis;
  }
  return m;
}

double integral_variance(const RateMatrix& rates, const IntegralSpec& spec) {
  const int d = rates.dims();
  validate_integral_spec(spec, d);
  Eigen::VectorXd kernel_mass(d);
  for (int i = 0; i < d; ++i)
    kernel_mass[i] =
        std::pow(spec.t[i], spec.orders[i]) / std::tgamma(spec.orders[i] + 1.0);
  double v = 0.0;
  for (int i = 0; i < d; ++i) {
    const double g1 = std::tgamma(spec.orders[i] + 1.0);
    const double axis = std::pow(spec.t[i], 2.0 * spec.orders[i] + 1.0) /
                        ((2.0 * spec.orders[i] + 1.0) * g1 * g1);
    const double others = product_except(kernel_mass, i);
    double jsum = 0.0;
    for (int j = 0; j < rates.jump_count(); ++j)
      jsum += double(j + 1) * (j + 1) * rates.rates()(j, i);
    v += jsum * axis * others * others;
  }
  return v;
}

double integral_sample_quadrature(const RateMatrix& rates,
                                  const IntegralSpec& spec, RngStream& rng) {
  const int d = rates.dims();
  validate_integral_spec(spec, d);
  Eigen::VectorXd kernel_mass(d);
  for (int i = 0; i < d; ++i)
    kernel_mass[i] =
        std::pow(spec.t[i], spec.orders[i]) / std::tgamma(spec.orders[i] + 1.0);

  const int N = spec.quadrature_nodes;
  double total = 0.0;
  for (int l = 0; l < d; ++l) {
    const double tl = spec.t[l];
    const double al = spec.orders[l];
    const double coeff = product_except(kernel_mass, l);
    if (tl == 0.0 || coeff == 0.0) continue;

    // Axis grid graded into the kernel singularity at s = t_l when
    // alpha_l < 1; uniform otherwise.
    const double q = (al < 1.0) ? 2.0 / al : 1.0;
    std::vector<double> s(N + 1);
    for (int m = 0; m <= N; ++m)
      s[m] = tl * (1.0 - std::pow(1.0 - static_cast<double>(m) / N, q));

    // Coordinate path: cumulative weighted Poisson increments per cell.
    // Step paths are exact between grid refinements; the trapezoid
    // averaging only smooths within-cell jump positions.
    double acc = 0.0;
    long value = 0;
    for (int m = 1; m <= N; ++m) {
      const double ds = s[m] - s[m - 1];
      long prev = value;
      for (int j = 0; j < rates.jump_count(); ++j)
        value += static_cast<long>(j + 1) *
                 sample_poisson(rates.rates()(j, l) * ds, rng);
      const double w =
          (std::pow(tl - s[m - 1], al) - std::pow(tl - s[m], al)) / al;
      acc += 0.5 * (prev + value) * w;
    }
    total += coeff * acc / std::tgamma(al);
  }
  return total;
}

double integral_sample_compound(const RateMatrix& rates, const MultiTime& t,
                                RngStream& rng) {
  const int d = rates.dims();
  validate_multitime(t, d);
  Eigen::VectorXd tv = t;
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    if (t[i] == 0.0) continue;
    const double others = product_except(tv, i);
    for (int j = 0; j < rates.jump_count(); ++j) {
      const int count = sample_poisson(rates.rates()(j, i) * t[i], rng);
      double arrivals = 0.0;
      for (int l = 0; l < count; ++l) arrivals += rng.uniform() * t[i];
      total += (j + 1) * others * arrivals;
    }
  }
  return total;
}

GaussianParams gaussian_asymptotic_params(const RateMatrix& rates,
                                          const MultiTime& t) {
  const int d = rates.dims();
  validate_multitime(t, d);
  Eigen::VectorXd tv = t;
  GaussianParams out;
  for (int l = 0; l < d; ++l) {
    const double others = product_except(tv, l);
    for (int j = 0; j < rates.jump_count(); ++j) {
      const double lam = rates.rates()(j, l);
      out.mean += (j + 1) * lam * others * t[l] * t[l] / 2.0;
      out.variance += double(j + 1) * (j + 1) * lam * others * others *
                      t[l] * t[l] * t[l] / 3.0;
    }
  }
  return out;
}

}  // namespace mgcp
