#include "mgcp/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgcp {

namespace {

constexpr double kXSwitch = 30.0;
constexpr int kTermBudget = 2000;
constexpr double kEpsAbs = 1e-15;

// Neumaier compensated accumulator on long double.  The extended
// mantissa plus the compensation term keeps the alternating series
// usable well past the point where a plain double sum loses all digits.
struct CompensatedSum {
  long double sum = 0.0L;
  long double comp = 0.0L;

  void add(long double term) {
    const long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  long double value() const { return sum + comp; }
};

// Kummer branch: for alpha == 1,
//   E^g_{1,b}(x) = M(g, b, x) / Gamma(b) = e^x M(b-g, b, -x) / Gamma(b).
// For x < 0 the transformed series has argument -x > 0 and (for g <= b)
// non-negative terms, so there is no cancellation.
SeriesResult mlf3_kummer_negative(double beta, double gamma, double x) {
  SeriesResult res;
  const double z = -x;  // > 0
  CompensatedSum acc;
  long double term = 1.0L;
  acc.add(term);
  int j = 0;
  int consecutive_small = 0;
  long double ratio = 0.0L;
  while (j < kTermBudget) {
    ratio = (static_cast<long double>(beta) - gamma + j) /
            ((static_cast<long double>(beta) + j) * (j + 1)) * z;
    term *= ratio;
    acc.add(term);
    ++j;
    const long double thresh =
        kEpsAbs * std::max<long double>(1.0L, std::fabs(acc.value()));
    consecutive_small = (std::fabs(term) < thresh) ? consecutive_small + 1 : 0;
    if (consecutive_small >= 2) break;
  }
  res.terms_used = j + 1;
  res.converged = consecutive_small >= 2;
  const long double rho = std::min<long double>(0.99L, std::fabs(ratio));
  const long double tail = std::fabs(term) * rho / (1.0L - rho);
  const double scale = std::exp(x - std::lgamma(beta));
  res.value = static_cast<double>(acc.value()) * scale;
  res.tail_bound = static_cast<double>(tail) * scale;
  if (!res.converged) res.tail_bound = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
  return std::lgamma(x);
}

double generalized_binomial(double alpha, int r) {
  if (r < 0) throw std::domain_error("generalized_binomial: r must be >= 0");
  double result = 1.0;
  for (int m = 0; m < r; ++m) result *= (alpha - m) / (m + 1);
  return result;
}

double falling_factorial(double a, int m) {
  double result = 1.0;
  for (int l = 0; l < m; ++l) result *= (a - l);
  return result;
}

SeriesResult mlf3(const MlfParams& params, double x) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !(params.gamma > 0.0))
    throw std::domain_error("mlf3: alpha, beta, gamma must be > 0");

  if (x == 0.0) {
    SeriesResult res;
    res.value = std::exp(-std::lgamma(params.beta));
    res.terms_used = 1;
    return res;
  }
  if (params.alpha == 1.0 && x < 0.0)
    return mlf3_kummer_negative(params.beta, params.gamma, x);
  if (std::fabs(x) > kXSwitch) {
    SeriesResult res;
    res.value = std::numeric_limits<double>::quiet_NaN();
    res.tail_bound = std::numeric_limits<double>::infinity();
    res.converged = false;
    return res;
  }

  // Direct series.  The coefficient Gamma(j+gamma)/(Gamma(gamma) j!) is
  // carried as a log by recurrence, never as two lgamma calls.
  const long double logabsx = std::log(std::fabs(x));
  const bool negative = x < 0.0;
  CompensatedSum acc;
  long double log_coeff = 0.0L;  // log of Gamma(j+gamma)/(Gamma(gamma) j!)
  long double prev_abs = 0.0L;
  long double last_abs = 0.0L;
  int consecutive_small = 0;
  int j = 0;
  for (; j < kTermBudget; ++j) {
    const long double log_term =
        log_coeff + j * logabsx -
        static_cast<long double>(
            std::lgamma(j * params.alpha + params.beta));
    long double term = std::exp(log_term);
    if (negative && (j & 1)) term = -term;
    acc.add(term);
    prev_abs = last_abs;
    last_abs = std::fabs(term);
    const long double thresh =
        kEpsAbs * std::max<long double>(1.0L, std::fabs(acc.value()));
    consecutive_small = (last_abs < thresh) ? consecutive_small + 1 : 0;
    if (consecutive_small >= 2) {
      ++j;
      break;
    }
    log_coeff += std::log((j + static_cast<long double>(params.gamma)) /
                          (j + 1.0L));
  }

  SeriesResult res;
  res.value = static_cast<double>(acc.value());
  res.terms_used = j;
  res.converged = consecutive_small >= 2;
  long double rho = prev_abs > 0.0L ? last_abs / prev_abs : 0.0L;
  rho = std::min<long double>(0.99L, rho);
  res.tail_bound = static_cast<double>(last_abs * rho / (1.0L - rho));
  if (!res.converged) res.tail_bound = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace mgcp
