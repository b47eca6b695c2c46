#include "mgcp/stats_tests.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgcp {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-14;

// Series expansion of P(a,x), good for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), good for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Kolmogorov tail Q_KS(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double ks_tail(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Marsaglia's approximation to the limiting A^2 CDF.
double ad_cdf(double z) {
  if (z <= 0.0) return 0.0;
  if (z < 2.0)
    return std::exp(-1.2337141 / z) / std::sqrt(z) *
           (2.00012 +
            (0.247105 -
             (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) *
                 z) *
                z);
  return std::exp(
      -std::exp(1.0776 - (2.30695 -
                          (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) *
                                                     z) *
                                         z) *
                              z) *
                             z));
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::domain_error("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::domain_error("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

TestResult chi_square_gof(const std::vector<double>& observed,
                          const std::vector<double>& expected,
                          double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  // Pool low-expectation cells left to right.
  std::vector<double> obs, exp;
  double pool_o = 0.0, pool_e = 0.0;
  for (std::size_t c = 0; c < observed.size(); ++c) {
    pool_o += observed[c];
    pool_e += expected[c];
    if (pool_e >= min_expected) {
      obs.push_back(pool_o);
      exp.push_back(pool_e);
      pool_o = pool_e = 0.0;
    }
  }
  if (pool_e > 0.0) {
    if (obs.empty()) {
      obs.push_back(pool_o);
      exp.push_back(pool_e);
    } else {
      obs.back() += pool_o;
      exp.back() += pool_e;
    }
  }
  TestResult r;
  r.dof = static_cast<int>(obs.size()) - 1;
  if (r.dof < 1) {
    r.dof = 0;
    return r;
  }
  for (std::size_t c = 0; c < obs.size(); ++c) {
    const double diff = obs[c] - exp[c];
    r.statistic += diff * diff / exp[c];
  }
  r.p_value = gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double dmax = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    dmax = std::max(dmax, std::fabs(ia / na - ib / nb));
  }
  TestResult r;
  r.statistic = dmax;
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * dmax;
  r.p_value = ks_tail(lambda);
  return r;
}

TestResult anderson_darling_normal(std::vector<double> x, double mean,
                                   double variance) {
  if (x.size() < 8)
    throw std::invalid_argument("anderson_darling_normal: sample too small");
  if (!(variance > 0.0))
    throw std::invalid_argument("anderson_darling_normal: variance > 0");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  const double sd = std::sqrt(variance);
  double a2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - mean) / sd;
    double u = normal_cdf(z);
    u = std::clamp(u, 1e-300, 1.0 - 1e-16);
    const double u_rev =
        std::clamp(normal_cdf((x[x.size() - 1 - i] - mean) / sd), 1e-300,
                   1.0 - 1e-16);
    a2 += (2.0 * i + 1.0) * (std::log(u) + std::log1p(-u_rev));
  }
  TestResult r;
  r.statistic = -n - a2 / n;
  r.p_value = 1.0 - ad_cdf(r.statistic);
  return r;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

SampleMoments sample_moments(const std::vector<double>& x) {
  SampleMoments m;
  m.count = x.size();
  if (x.empty()) return m;
  double s = 0.0;
  for (double v : x) s += v;
  m.mean = s / x.size();
  if (x.size() > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - m.mean) * (v - m.mean);
    m.variance = ss / (x.size() - 1);
  }
  return m;
}

bool within_clt_band(double empirical_mean, double expected_mean,
                     double draw_variance, std::size_t n,
                     double band_sigmas) {
  const double band =
      band_sigmas * std::sqrt(draw_variance / static_cast<double>(n));
  return std::fabs(empirical_mean - expected_mean) <= band;
}

}  // namespace mgcp
