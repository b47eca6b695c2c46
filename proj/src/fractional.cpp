#include "mgcp/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace mgcp {

namespace {

constexpr int kRSeriesBudget = 2000;
constexpr double kFdStep = 1e-4;

struct RSeries {
  long double value = 0.0L;
  long double tail = 0.0L;
  bool converged = true;
};

// sum_{r>=0} (-z)^r / r! * prod_{l<m} (alpha r - l), the inner series of
// the space-fractional pmf.  The falling product is the ratio
// Gamma(alpha r + 1)/Gamma(alpha r + 1 - m) written pole-free.
RSeries r_series(double z, double alpha, int m) {
  RSeries out;
  if (z == 0.0) {
    out.value = (m == 0) ? 1.0L : 0.0L;
    return out;
  }
  const long double logz = std::log(static_cast<long double>(z));
  long double sum = 0.0L, comp = 0.0L;
  long double last_abs = 0.0L;
  int consecutive_small = 0;
  int r = 0;
  for (; r < kRSeriesBudget; ++r) {
    long double fall = 1.0L;
    for (int l = 0; l < m; ++l) fall *= (alpha * r - l);
    long double term =
        std::exp(r * logz - std::lgamma(static_cast<long double>(r) + 1.0L)) *
        fall;
    if (r & 1) term = -term;
    // Neumaier step
    const long double tt = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - tt) + term;
    else
      comp += (term - tt) + sum;
    sum = tt;
    last_abs = std::fabs(term);
    if (r >= m && r >= z) {
      const long double thresh =
          1e-15L * std::max<long double>(1.0L, std::fabs(sum + comp));
      consecutive_small = (last_abs < thresh) ? consecutive_small + 1 : 0;
      if (consecutive_small >= 2) break;
    }
  }
  out.value = sum + comp;
  out.converged = consecutive_small >= 2;
  out.tail = out.converged ? last_abs : HUGE_VALL;
  return out;
}

MultiTime constant_time(double t, int d) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("time must be finite and >= 0");
  return MultiTime::Constant(d, t);
}

Eigen::VectorXd positive_column_sums(const RateMatrix& rates) {
  Eigen::VectorXd mu = rates.column_sums();
  for (int i = 0; i < mu.size(); ++i)
    if (!(mu[i] > 0.0))
      throw std::invalid_argument(
          "fractional variant requires every column sum mu_i > 0");
  return mu;
}

// One-parameter generalized fractional counting pmf for the rate column
// lam at time ti, through the three-parameter Mittag-Leffler kernel.
double gfcp_pmf(const Eigen::VectorXd& lam, double alpha, double ti, int ni) {
  const double mu = lam.sum();
  const double y = std::pow(ti, alpha);  // t^alpha
  double p = 0.0;
  const int k = static_cast<int>(lam.size());
  for (const Composition& x : enumerate_omega(k, ni)) {
    int m = 0;
    double coeff = 1.0;
    for (int j = 0; j < k; ++j) {
      if (x[j] == 0) continue;
      m += x[j];
      coeff *= std::pow(lam[j] * y, x[j]) / std::tgamma(x[j] + 1.0);
    }
    coeff *= std::tgamma(m + 1.0);
    const SeriesResult ml =
        mlf3({alpha, alpha * m + 1.0, static_cast<double>(m + 1)}, -y * mu);
    if (!ml.converged)
      throw std::runtime_error("time_frac_pmf: Mittag-Leffler series did "
                               "not converge (argument too large)");
    p += coeff * ml.value;
  }
  return p;
}

// Ordered compositions of n into r positive parts.
void positive_compositions(int n, int r, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if (r == 1) {
    if (n >= 1) {
      cur.push_back(n);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first <= n - (r - 1); ++first) {
    cur.push_back(first);
    positive_compositions(n - first, r - 1, cur, out);
    cur.pop_back();
  }
}

double int_factorial(int n) { return std::tgamma(n + 1.0); }

double central_diff(const std::function<double(double)>& f, double x,
                    double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

void validate_orders(const FractionalOrders& orders, int dims) {
  if (orders.size() != dims)
    throw std::invalid_argument("FractionalOrders: dimension mismatch");
  for (int i = 0; i < orders.size(); ++i)
    if (!(orders[i] > 0.0) || orders[i] > 1.0)
      throw std::invalid_argument("FractionalOrders: each alpha_i in (0,1]");
}

bool is_multivariate(VariantKind kind) {
  return kind == VariantKind::space_multivariate ||
         kind == VariantKind::time_multivariate;
}

double space_frac_pgf(const RateMatrix& rates, const MultiTime& t,
                      const FractionalOrders& orders, double u) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  double exponent = 0.0;
  for (int i = 0; i < rates.dims(); ++i) {
    double s = 0.0;
    for (int j = 0; j < rates.jump_count(); ++j)
      s += rates.rates()(j, i) * (1.0 - std::pow(u, j + 1));
    exponent += t[i] * std::pow(s, orders[i]);
  }
  return std::exp(-exponent);
}

SeriesResult space_frac_pmf(const RateMatrix& rates, const MultiTime& t,
                            const FractionalOrders& orders, int n) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  if (n < 0) throw std::invalid_argument("space_frac_pmf: n >= 0 required");
  const int d = rates.dims();
  const int k = rates.jump_count();
  const Eigen::VectorXd mu = positive_column_sums(rates);

  // Per-coordinate r-series, keyed by the composition weight m.
  std::vector<std::vector<RSeries>> series(d);
  for (int i = 0; i < d; ++i) {
    const double z = std::pow(mu[i], orders[i]) * t[i];
    series[i].reserve(n + 1);
    for (int m = 0; m <= n; ++m)
      series[i].push_back(r_series(z, orders[i], m));
  }

  // Per-coordinate factor c_i(n_i) with its accumulated series tail.
  std::vector<std::vector<double>> coord(d), coord_tail(d);
  bool converged = true;
  for (int i = 0; i < d; ++i) {
    coord[i].assign(n + 1, 0.0);
    coord_tail[i].assign(n + 1, 0.0);
    for (int ni = 0; ni <= n; ++ni) {
      long double c = 0.0L, ct = 0.0L;
      for (const Composition& x : enumerate_omega(k, ni)) {
        int m = 0;
        long double coeff = 1.0L;
        for (int j = 0; j < k; ++j) {
          if (x[j] == 0) continue;
          m += x[j];
          coeff *= std::pow(static_cast<long double>(rates.rates()(j, i) /
                                                     mu[i]),
                            x[j]) /
                   std::tgamma(static_cast<long double>(x[j]) + 1.0L);
        }
        const long double sgn = (m & 1) ? -1.0L : 1.0L;
        c += sgn * coeff * series[i][m].value;
        ct += coeff * series[i][m].tail;
        converged = converged && series[i][m].converged;
      }
      coord[i][ni] = static_cast<double>(c);
      coord_tail[i][ni] = static_cast<double>(ct);
    }
  }

  SeriesResult res;
  long double p = 0.0L, tail = 0.0L;
  for (const auto& split : enumerate_theta(n, d)) {
    long double prod = 1.0L;
    for (int i = 0; i < d; ++i) prod *= coord[i][split[i]];
    p += prod;
    for (int i = 0; i < d; ++i) {
      long double others = 1.0L;
      for (int r = 0; r < d; ++r)
        if (r != i) others *= std::fabs(coord[r][split[r]]);
      tail += coord_tail[i][split[i]] * others;
    }
  }
  res.value = static_cast<double>(p);
  res.tail_bound = static_cast<double>(tail);
  res.converged = converged;
  res.terms_used = kRSeriesBudget;  // budget-bounded; see tail_bound
  return res;
}

double space_frac_pgf_multivariate(const RateMatrix& rates, double t,
                                   const FractionalOrders& orders, double u) {
  return space_frac_pgf(rates, constant_time(t, rates.dims()), orders, u);
}

double space_frac_laplace_multivariate(const RateMatrix& rates, double t,
                                       const FractionalOrders& orders,
                                       double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("space_frac_laplace: eta > 0 required");
  return space_frac_pgf_multivariate(rates, t, orders, std::exp(-eta));
}

SeriesResult space_frac_pmf_multivariate(const RateMatrix& rates, double t,
                                         const FractionalOrders& orders,
                                         int n) {
  return space_frac_pmf(rates, constant_time(t, rates.dims()), orders, n);
}

double time_frac_pgf(const RateMatrix& rates, const MultiTime& t,
                     const FractionalOrders& orders, double u) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  double p = 1.0;
  for (int i = 0; i < rates.dims(); ++i) {
    double s = 0.0;
    for (int j = 0; j < rates.jump_count(); ++j)
      s += rates.rates()(j, i) * (1.0 - std::pow(u, j + 1));
    const SeriesResult ml =
        mlf3({orders[i], 1.0, 1.0}, -std::pow(t[i], orders[i]) * s);
    if (!ml.converged)
      throw std::runtime_error("time_frac_pgf: Mittag-Leffler series did "
                               "not converge (argument too large)");
    p *= ml.value;
  }
  return p;
}

double time_frac_pmf(const RateMatrix& rates, const MultiTime& t,
                     const FractionalOrders& orders, int n) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  if (n < 0) throw std::invalid_argument("time_frac_pmf: n >= 0 required");
  const int d = rates.dims();
  std::vector<std::vector<double>> h(d);
  for (int i = 0; i < d; ++i) {
    h[i].reserve(n + 1);
    for (int ni = 0; ni <= n; ++ni)
      h[i].push_back(gfcp_pmf(rates.rates().col(i), orders[i], t[i], ni));
  }
  double p = 0.0;
  for (const auto& split : enumerate_theta(n, d)) {
    double prod = 1.0;
    for (int i = 0; i < d; ++i) prod *= h[i][split[i]];
    p += prod;
  }
  return p;
}

double time_frac_pmf_omega_order(const RateMatrix& rates, const MultiTime& t,
                                 const FractionalOrders& orders, int n) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  const int d = rates.dims();
  const int k = rates.jump_count();
  std::map<std::pair<int, int>, double> mlf_cache;  // (i, m) -> value
  auto mlf_im = [&](int i, int m) {
    const auto key = std::make_pair(i, m);
    auto it = mlf_cache.find(key);
    if (it != mlf_cache.end()) return it->second;
    const double mu_i = rates.rates().col(i).sum();
    const SeriesResult ml =
        mlf3({orders[i], orders[i] * m + 1.0, static_cast<double>(m + 1)},
             -std::pow(t[i], orders[i]) * mu_i);
    if (!ml.converged)
      throw std::runtime_error("time_frac_pmf_omega_order: Mittag-Leffler "
                               "series did not converge");
    mlf_cache.emplace(key, ml.value);
    return ml.value;
  };

  double p = 0.0;
  for (const Composition& jump_counts : enumerate_omega(k, n)) {
    // Split each jump count n_j across the d coordinates; the cartesian
    // product over j yields the assignment matrix n_ji.
    Eigen::MatrixXi assign = Eigen::MatrixXi::Zero(k, d);
    std::function<void(int)> rec = [&](int j) {
      if (j == k) {
        double term = 1.0;
        for (int i = 0; i < d; ++i) {
          int m = 0;
          double coeff = 1.0;
          const double y = std::pow(t[i], orders[i]);
          for (int jj = 0; jj < k; ++jj) {
            const int e = assign(jj, i);
            if (e == 0) continue;
            m += e;
            coeff *= std::pow(rates.rates()(jj, i) * y, e) /
                     std::tgamma(e + 1.0);
          }
          term *= std::tgamma(m + 1.0) * coeff * mlf_im(i, m);
        }
        p += term;
        return;
      }
      for (const auto& split : enumerate_theta(jump_counts[j], d)) {
        for (int i = 0; i < d; ++i) assign(j, i) = split[i];
        rec(j + 1);
      }
      for (int i = 0; i < d; ++i) assign(j, i) = 0;
    };
    rec(0);
  }
  return p;
}

double time_frac_factorial_moment(const RateMatrix& rates, const MultiTime& t,
                                  const FractionalOrders& orders, int n) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  if (n < 0) throw std::invalid_argument("factorial moment: n >= 0 required");
  if (n == 0) return 1.0;
  const int d = rates.dims();
  const int k = rates.jump_count();

  auto inner = [&](int i, int ni) {
    if (ni == 0) return 1.0;
    const double y = std::pow(t[i], orders[i]);
    double s = 0.0;
    for (int r = 1; r <= ni; ++r) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      positive_compositions(ni, r, cur, comps);
      double block = 0.0;
      for (const auto& parts : comps) {
        double prod = 1.0;
        for (int m : parts) {
          double fac = 0.0;
          for (int j = 0; j < k; ++j)
            fac += rates.rates()(j, i) * falling_factorial(j + 1, m);
          prod *= fac / int_factorial(m);
        }
        block += prod;
      }
      s += std::pow(y, r) / std::tgamma(orders[i] * r + 1.0) * block;
    }
    return s;
  };

  double total = 0.0;
  for (const auto& split : enumerate_theta(n, d)) {
    double prod = 1.0;
    for (int i = 0; i < d; ++i) prod *= inner(i, split[i]);
    total += prod;
  }
  return int_factorial(n) * total;
}

double time_frac_mean(const RateMatrix& rates, const MultiTime& t,
                      const FractionalOrders& orders) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  double m = 0.0;
  for (int i = 0; i < rates.dims(); ++i) {
    const double y = std::pow(t[i], orders[i]);
    for (int j = 0; j < rates.jump_count(); ++j)
      m += (j + 1) * rates.rates()(j, i) * y / std::tgamma(orders[i] + 1.0);
  }
  return m;
}

double time_frac_variance(const RateMatrix& rates, const MultiTime& t,
                          const FractionalOrders& orders) {
  validate_multitime(t, rates.dims());
  validate_orders(orders, rates.dims());
  double v = 0.0;
  for (int i = 0; i < rates.dims(); ++i) {
    const double y = std::pow(t[i], orders[i]);
    const double g1 = std::tgamma(orders[i] + 1.0);
    double s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < rates.jump_count(); ++j) {
      s1 += (j + 1) * rates.rates()(j, i) * y;
      s2 += double(j + 1) * (j + 1) * rates.rates()(j, i) * y;
    }
    v += s2 / g1 +
         s1 * s1 *
             (2.0 / std::tgamma(2.0 * orders[i] + 1.0) - 1.0 / (g1 * g1));
  }
  return v;
}

double time_frac_pgf_multivariate(const RateMatrix& rates, double t,
                                  const FractionalOrders& orders, double u) {
  return time_frac_pgf(rates, constant_time(t, rates.dims()), orders, u);
}

double time_frac_pmf_multivariate(const RateMatrix& rates, double t,
                                  const FractionalOrders& orders, int n) {
  return time_frac_pmf(rates, constant_time(t, rates.dims()), orders, n);
}

double time_frac_mean_multivariate(const RateMatrix& rates, double t,
                                   const FractionalOrders& orders) {
  return time_frac_mean(rates, constant_time(t, rates.dims()), orders);
}

double time_frac_variance_multivariate(const RateMatrix& rates, double t,
                                       const FractionalOrders& orders) {
  return time_frac_variance(rates, constant_time(t, rates.dims()), orders);
}

double caputo_derivative(const std::function<double(double)>& f, double alpha,
                         double t, int nodes) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("caputo_derivative: alpha in (0,1]");
  if (!(t > 0.0))
    throw std::invalid_argument("caputo_derivative: t > 0 required");
  const double href = kFdStep * std::max(1.0, std::fabs(t));
  if (alpha == 1.0) return central_diff(f, t, href);
  if (nodes < 8) throw std::invalid_argument("caputo_derivative: nodes >= 8");

  // Difference form, no interior derivatives of f:
  //   Gamma(1-a) D^a f(t) = (f(t)-f(0)) t^-a
  //                         + a Int_0^t (f(t)-f(s)) (t-s)^{-a-1} ds.
  // Mesh graded toward s = 0 (where f may behave like s^a) and s = t
  // (kernel singularity).
  const int half = nodes / 2;
  const double q0 = std::min(6.0, 2.0 / alpha);
  const double q1 = std::min(6.0, 2.0 / (1.0 - alpha));
  std::vector<double> s;
  s.reserve(2 * half + 1);
  for (int l = 0; l <= half; ++l)
    s.push_back(0.5 * t * std::pow(static_cast<double>(l) / half, q0));
  for (int m = half - 1; m >= 0; --m)
    s.push_back(t - 0.5 * t * std::pow(static_cast<double>(m) / half, q1));
  // Grading can underflow below double spacing; collapse duplicates.
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const int N = static_cast<int>(s.size()) - 1;

  const double ft = f(t);
  std::vector<double> g(N + 1);
  for (int l = 0; l <= N; ++l) g[l] = ft - f(s[l]);

  double integral = 0.0;
  // Product trapezoid with exact moments of (t-s)^{-a-1} on all cells
  // except the last one, which touches the non-integrable endpoint.
  for (int l = 0; l + 1 < N; ++l) {
    const double sa = s[l], sb = s[l + 1];
    const double ta = t - sa, tb = t - sb;
    const double i0 =
        (std::pow(tb, -alpha) - std::pow(ta, -alpha)) / alpha;
    const double i1 = t * i0 -
                      (std::pow(ta, 1.0 - alpha) - std::pow(tb, 1.0 - alpha)) /
                          (1.0 - alpha);
    const double slope = (g[l + 1] - g[l]) / (sb - sa);
    const double intercept = g[l] - slope * sa;
    integral += intercept * i0 + slope * i1;
  }
  // Last cell: f(t)-f(s) ~ f'(t)(t-s) with f smooth at the endpoint.
  const double fpt = central_diff(f, t, href);
  integral += fpt * std::pow(t - s[N - 1], 1.0 - alpha) / (1.0 - alpha);

  return (g[0] * std::pow(t, -alpha) + alpha * integral) /
         std::tgamma(1.0 - alpha);
}

double governing_system_residual(const RateMatrix& rates, const MultiTime& t,
                                 const FractionalOrders& orders, int n,
                                 VariantKind kind) {
  const int d = rates.dims();
  const int k = rates.jump_count();
  const double u = 0.5;

  auto shift_time = [&](int i, double v) {
    MultiTime s = t;
    s[i] = v;
    return s;
  };

  switch (kind) {
    case VariantKind::base: {
      validate_multitime(t, d);
      double worst = 0.0;
      for (int i = 0; i < d; ++i) {
        const double lhs = central_diff(
            [&](double v) { return pmf_direct(rates, shift_time(i, v), n); },
            t[i], kFdStep);
        double rhs = 0.0;
        const double pn = pmf_direct(rates, t, n);
        for (int j = 0; j < k; ++j) {
          const double prev =
              (n - (j + 1) >= 0) ? pmf_direct(rates, t, n - (j + 1)) : 0.0;
          rhs += -rates.rates()(j, i) * (pn - prev);
        }
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
      return worst;
    }
    case VariantKind::space_multiparameter: {
      validate_multitime(t, d);
      validate_orders(orders, d);
      double worst = 0.0;
      const double g = space_frac_pgf(rates, t, orders, u);
      for (int i = 0; i < d; ++i) {
        const double lhs = central_diff(
            [&](double v) {
              return space_frac_pgf(rates, shift_time(i, v), orders, u);
            },
            t[i], kFdStep);
        double s = 0.0;
        for (int j = 0; j < k; ++j)
          s += rates.rates()(j, i) * (1.0 - std::pow(u, j + 1));
        const double rhs = -std::pow(s, orders[i]) * g;
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
      return worst;
    }
    case VariantKind::space_multivariate: {
      if (t.size() != 1)
        throw std::invalid_argument(
            "multivariate residual expects a scalar time");
      validate_orders(orders, d);
      const double tv = t[0];
      const double lhs = central_diff(
          [&](double v) {
            return space_frac_pgf_multivariate(rates, v, orders, u);
          },
          tv, kFdStep);
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        double si = 0.0;
        for (int j = 0; j < k; ++j)
          si += rates.rates()(j, i) * (1.0 - std::pow(u, j + 1));
        s += std::pow(si, orders[i]);
      }
      const double rhs =
          -s * space_frac_pgf_multivariate(rates, tv, orders, u);
      return std::fabs(lhs - rhs);
    }
    case VariantKind::time_multiparameter: {
      validate_multitime(t, d);
      validate_orders(orders, d);
      double worst = 0.0;
      for (int i = 0; i < d; ++i) {
        const double lhs = caputo_derivative(
            [&](double v) {
              return time_frac_pmf(rates, shift_time(i, v), orders, n);
            },
            orders[i], t[i]);
        double rhs = 0.0;
        const double pn = time_frac_pmf(rates, t, orders, n);
        for (int j = 0; j < k; ++j) {
          const double prev = (n - (j + 1) >= 0)
                                  ? time_frac_pmf(rates, t, orders, n - (j + 1))
                                  : 0.0;
          rhs += -rates.rates()(j, i) * (pn - prev);
        }
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
      return worst;
    }
    case VariantKind::time_multivariate:
      throw std::invalid_argument(
          "governing residual is not defined for the multivariate "
          "time-fractional variant");
  }
  throw std::logic_error("unreachable");
}

}  // namespace mgcp
