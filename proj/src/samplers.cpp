#include "mgcp/samplers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>


namespace mgcp {

namespace {

constexpr double kPtrdThreshold = 30.0;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// Inversion by sequential search; exact, fine for small means.
int poisson_inversion(double mean, RngStream& rng) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  int k = 0;
  while (u >= cdf && k < 1000) {
    ++k;
    p *= mean / k;
    cdf += p;
  }
  return k;
}

// Transformed-rejection (PTRD) sampler for large means.
int poisson_ptrd(double mu, RngStream& rng) {
  const double smu = std::sqrt(mu);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<int>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mu - mu - std::lgamma(kf + 1.0))
      return static_cast<int>(kf);
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL * (stream_id + 1));
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_positive() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform_positive()); }

int sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("sample_poisson: mean must be finite, >= 0");
  if (mean == 0.0) return 0;
  if (mean < kPtrdThreshold) return poisson_inversion(mean, rng);
  return poisson_ptrd(mean, rng);
}

long sample_mgcp(const RateMatrix& rates, const MultiTime& t, RngStream& rng) {
  validate_multitime(t, rates.dims());
  long total = 0;
  for (int j = 0; j < rates.jump_count(); ++j)
    total += static_cast<long>(j + 1) *
             sample_poisson(rates.rate_dot(j, t), rng);
  return total;
}

SamplePath sample_mgcp_path(const RateMatrix& rates,
                            const std::vector<MultiTime>& grid,
                            RngStream& rng) {
  SamplePath path;
  path.grid = grid;
  path.values.reserve(grid.size());
  long value = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    validate_multitime(grid[g], rates.dims());
    if (g == 0) {
      // increment from the origin
      value = sample_mgcp(rates, grid[0], rng);
    } else {
      const MultiTime diff = grid[g] - grid[g - 1];
      for (int i = 0; i < diff.size(); ++i)
        if (diff[i] < 0.0)
          throw std::invalid_argument(
              "sample_mgcp_path: grid must be componentwise increasing");
      value += sample_mgcp(rates, diff, rng);
    }
    path.values.push_back(value);
  }
  return path;
}

double sample_stable(double alpha, double t, RngStream& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("sample_stable: alpha in (0,1) required");
  if (!(t >= 0.0)) throw std::invalid_argument("sample_stable: t >= 0");
  if (t == 0.0) return 0.0;
  const double u = rng.uniform_positive() * std::numbers::pi;
  const double e = rng.exponential();
  const double d1 = std::sin(alpha * u) /
                    std::pow(std::sin(u), 1.0 / alpha) *
                    std::pow(std::sin((1.0 - alpha) * u) / e,
                             (1.0 - alpha) / alpha);
  return std::pow(t, 1.0 / alpha) * d1;
}

double sample_inverse_stable(double alpha, double t, RngStream& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument(
        "sample_inverse_stable: alpha in (0,1) required");
  if (!(t >= 0.0)) throw std::invalid_argument("sample_inverse_stable: t >= 0");
  if (t == 0.0) return 0.0;
  const double d1 = sample_stable(alpha, 1.0, rng);
  return std::pow(t / d1, alpha);
}

long sample_variant(const RateMatrix& rates, const MultiTime& t,
                    const FractionalOrders& orders, VariantKind kind,
                    RngStream& rng) {
  const int d = rates.dims();
  if (kind == VariantKind::base) return sample_mgcp(rates, t, rng);
  validate_orders(orders, d);

  MultiTime base_times(d);
  if (is_multivariate(kind)) {
    if (t.size() != 1)
      throw std::invalid_argument(
          "sample_variant: multivariate kinds take a scalar time "
          "(length-1 vector)");
    base_times.setConstant(t[0]);
  } else {
    validate_multitime(t, d);
    base_times = t;
  }

  // Independent coordinate subordinators; alpha = 1 is the identity.
  MultiTime changed(d);
  const bool space = kind == VariantKind::space_multiparameter ||
                     kind == VariantKind::space_multivariate;
  for (int i = 0; i < d; ++i) {
    if (orders[i] == 1.0)
      changed[i] = base_times[i];
    else
      changed[i] = space
                       ? sample_stable(orders[i], base_times[i], rng)
                       : sample_inverse_stable(orders[i], base_times[i], rng);
  }
  return sample_mgcp(rates, changed, rng);
}

}  // namespace mgcp
