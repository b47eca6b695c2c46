#ifndef MGCP_SAMPLERS_HPP
#define MGCP_SAMPLERS_HPP

#include <cstdint>
#include <vector>

#include "mgcp/fractional.hpp"
#include "mgcp/gcp_core.hpp"

namespace mgcp {

/// Seeded deterministic generator (xoshiro256++), one independent
/// stream per (seed, stream_id).  Identical pairs reproduce identical
/// draw sequences bit for bit; distinct stream ids are independent by
/// construction and may run in parallel.  No global RNG anywhere.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();

  /// Uniform on [0,1) with 53 random bits.
  double uniform();

  /// Uniform on (0,1], safe as an exponential/log argument.
  double uniform_positive();

  double exponential();  // rate 1

 private:
  std::uint64_t s_[4];
};

struct SamplePath {
  std::vector<MultiTime> grid;
  std::vector<long> values;
};

int sample_poisson(double mean, RngStream& rng);

/// One draw of the process value at t: sum over jump sizes j of
/// j * Poisson(Lambda_j . t).
long sample_mgcp(const RateMatrix& rates, const MultiTime& t, RngStream& rng);

/// Path on a componentwise-increasing grid starting at 0; increments
/// over consecutive cells are independent draws at the t-differences.
SamplePath sample_mgcp_path(const RateMatrix& rates,
                            const std::vector<MultiTime>& grid,
                            RngStream& rng);

/// One-sided alpha-stable draw with E e^{-w D(t)} = e^{-t w^alpha},
/// via the Kanter/Chambers-Mallows-Stuck transformation.
double sample_stable(double alpha, double t, RngStream& rng);

/// First-passage (inverse stable) draw via L(t) = (t/D(1))^alpha;
/// E L(t) = t^alpha / Gamma(alpha+1).
double sample_inverse_stable(double alpha, double t, RngStream& rng);

/// One draw from any of the five variants.  Multivariate kinds take the
/// scalar time as a length-1 vector.  Orders equal to 1 reduce that
/// coordinate to the deterministic identity time change.
long sample_variant(const RateMatrix& rates, const MultiTime& t,
                    const FractionalOrders& orders, VariantKind kind,
                    RngStream& rng);

}  // namespace mgcp

#endif
