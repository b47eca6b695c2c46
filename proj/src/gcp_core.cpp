#include "mgcp/gcp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace mgcp {

namespace {

constexpr std::size_t kEnumerationCap = 10'000'000;

void enumerate_omega_rec(int k, int pos, int remaining, Composition& current,
                         std::vector<Composition>& out) {
  if (pos == k - 1) {
    const int size = k;  // jump size of the last slot
    if (remaining % size == 0) {
      current[pos] = remaining / size;
      out.push_back(current);
      if (out.size() > kEnumerationCap)
        throw std::runtime_error("enumerate_omega: enumeration cap exceeded");
    }
    return;
  }
  const int size = pos + 1;
  for (int x = remaining / size; x >= 0; --x) {
    current[pos] = x;
    enumerate_omega_rec(k, pos + 1, remaining - size * x, current, out);
  }
}

void enumerate_theta_rec(int d, int pos, int remaining, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (pos == d - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    if (out.size() > kEnumerationCap)
      throw std::runtime_error("enumerate_theta: enumeration cap exceeded");
    return;
  }
  for (int x = 0; x <= remaining; ++x) {
    cur[pos] = x;
    enumerate_theta_rec(d, pos + 1, remaining - x, cur, out);
  }
}

// Poisson(mean) pmf table 0..n_max, log-space recurrence.
Eigen::VectorXd poisson_table(double mean, int n_max) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(n_max + 1);
  if (mean == 0.0) {
    q[0] = 1.0;
    return q;
  }
  const double log_mean = std::log(mean);
  for (int c = 0; c <= n_max; ++c)
    q[c] = std::exp(c * log_mean - mean - std::lgamma(c + 1.0));
  return q;
}

}  // namespace

RateMatrix::RateMatrix(Eigen::MatrixXd rates, bool strict)
    : rates_(std::move(rates)) {
  if (rates_.rows() < 1 || rates_.cols() < 1)
    throw std::invalid_argument("RateMatrix: k >= 1 and d >= 1 required");
  for (Eigen::Index j = 0; j < rates_.rows(); ++j) {
    bool row_positive = false;
    for (Eigen::Index i = 0; i < rates_.cols(); ++i) {
      const double v = rates_(j, i);
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument(
            "RateMatrix: rates must be finite and >= 0");
      if (strict && v == 0.0)
        throw std::invalid_argument(
            "RateMatrix: strict mode requires all rates > 0");
      if (v > 0.0) row_positive = true;
    }
    if (!row_positive)
      throw std::invalid_argument(
          "RateMatrix: each row needs at least one positive rate");
  }
}

void validate_multitime(const MultiTime& t, int dims) {
  if (t.size() != dims)
    throw std::invalid_argument("MultiTime: dimension mismatch");
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (!std::isfinite(t[i]) || t[i] < 0.0)
      throw std::invalid_argument("MultiTime: components must be >= 0");
}

std::vector<Composition> enumerate_omega(int k, int n) {
  if (k < 1) throw std::invalid_argument("enumerate_omega: k >= 1 required");
  if (n < 0) throw std::invalid_argument("enumerate_omega: n >= 0 required");
  std::vector<Composition> out;
  Composition current(k, 0);
  enumerate_omega_rec(k, 0, n, current, out);
  return out;
}

std::vector<std::vector<int>> enumerate_theta(int n, int d) {
  if (d < 1) throw std::invalid_argument("enumerate_theta: d >= 1 required");
  if (n < 0) throw std::invalid_argument("enumerate_theta: n >= 0 required");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  enumerate_theta_rec(d, 0, n, cur, out);
  return out;
}

double pmf_direct(const RateMatrix& rates, const MultiTime& t, int n) {
  validate_multitime(t, rates.dims());
  const int k = rates.jump_count();
  double total_rate = 0.0;
  Eigen::VectorXd a(k);
  for (int j = 0; j < k; ++j) {
    a[j] = rates.rate_dot(j, t);
    total_rate += a[j];
  }
  double p = 0.0;
  for (const Composition& x : enumerate_omega(k, n)) {
    double log_term = -total_rate;
    bool zero = false;
    for (int j = 0; j < k; ++j) {
      if (x[j] == 0) continue;
      if (a[j] == 0.0) {
        zero = true;  // degenerate Poisson at 0 cannot produce jumps
        break;
      }
      log_term += x[j] * std::log(a[j]) - std::lgamma(x[j] + 1.0);
    }
    if (!zero) p += std::exp(log_term);
  }
  return p;
}

PmfTable pmf_convolution(const RateMatrix& rates, const MultiTime& t,
                         int n_max) {
  validate_multitime(t, rates.dims());
  if (n_max < 0)
    throw std::invalid_argument("pmf_convolution: n_max >= 0 required");
  Eigen::VectorXd dist = Eigen::VectorXd::Zero(n_max + 1);
  dist[0] = 1.0;
  for (int j = 0; j < rates.jump_count(); ++j) {
    const double a = rates.rate_dot(j, t);
    if (a == 0.0) continue;
    const int size = j + 1;
    const Eigen::VectorXd q = poisson_table(a, n_max / size);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      double s = 0.0;
      for (int c = 0; c * size <= n; ++c) s += q[c] * dist[n - c * size];
      next[n] = s;
    }
    dist = std::move(next);
  }
  PmfTable table;
  table.probs = std::move(dist);
  table.mass_accounted = table.probs.sum();
  return table;
}

PmfTable pmf_sum_of_gcps(const RateMatrix& rates, const MultiTime& t,
                         int n_max) {
  validate_multitime(t, rates.dims());
  const int d = rates.dims();
  // Per-coordinate one-parameter GCP pmf tables, each by direct
  // enumeration so this stays an independent route.
  std::vector<Eigen::VectorXd> per_coord(d);
  for (int i = 0; i < d; ++i) {
    const RateMatrix col = rates.column(i);
    MultiTime ti(1);
    ti << t[i];
    Eigen::VectorXd g(n_max + 1);
    for (int n = 0; n <= n_max; ++n) g[n] = pmf_direct(col, ti, n);
    per_coord[i] = std::move(g);
  }
  PmfTable table;
  table.probs = Eigen::VectorXd::Zero(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    double p = 0.0;
    for (const auto& split : enumerate_theta(n, d)) {
      double prod = 1.0;
      for (int i = 0; i < d; ++i) prod *= per_coord[i][split[i]];
      p += prod;
    }
    table.probs[n] = p;
  }
  table.mass_accounted = table.probs.sum();
  return table;
}

double pgf(const RateMatrix& rates, const MultiTime& t, double u) {
  validate_multitime(t, rates.dims());
  double exponent = 0.0;
  for (int j = 0; j < rates.jump_count(); ++j)
    exponent += rates.rate_dot(j, t) * (1.0 - std::pow(u, j + 1));
  return std::exp(-exponent);
}

double mgf(const RateMatrix& rates, const MultiTime& t, double u) {
  validate_multitime(t, rates.dims());
  double exponent = 0.0;
  for (int j = 0; j < rates.jump_count(); ++j)
    exponent += rates.rate_dot(j, t) * (1.0 - std::exp(u * (j + 1)));
  return std::exp(-exponent);
}

double mean(const RateMatrix& rates, const MultiTime& t) {
  validate_multitime(t, rates.dims());
  double m = 0.0;
  for (int j = 0; j < rates.jump_count(); ++j)
    m += (j + 1) * rates.rate_dot(j, t);
  return m;
}

double variance(const RateMatrix& rates, const MultiTime& t) {
  validate_multitime(t, rates.dims());
  double v = 0.0;
  for (int j = 0; j < rates.jump_count(); ++j)
    v += double(j + 1) * (j + 1) * rates.rate_dot(j, t);
  return v;
}

int truncation_index(const RateMatrix& rates, const MultiTime& t) {
  const double m = mean(rates, t);
  const double v = variance(rates, t);
  return static_cast<int>(std::ceil(m + 12.0 * std::sqrt(v) + 20.0));
}

}  // namespace mgcp
