#ifndef MGCP_GCP_CORE_HPP
#define MGCP_GCP_CORE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace mgcp {

/// A point in R^d_+, the process index.  The partial order is
/// component-wise.
using MultiTime = Eigen::VectorXd;

/// One element of Omega(k,n): counts (x_1,...,x_k) of jumps of each
/// size, with sum_j j x_j equal to the target n.
using Composition = std::vector<int>;

/// The k x d array of jump rates; row j holds the rate vector
/// Lambda_j = (lambda_j1,...,lambda_jd) of the size-(j+1) jumps.
///
/// Zero entries are accepted as long as no row is identically zero;
/// strict = true enforces all entries > 0.
class RateMatrix {
 public:
  explicit RateMatrix(Eigen::MatrixXd rates, bool strict = false);

  int jump_count() const { return static_cast<int>(rates_.rows()); }  // k
  int dims() const { return static_cast<int>(rates_.cols()); }        // d
  const Eigen::MatrixXd& rates() const { return rates_; }

  /// Lambda_j . t for 0-based row j (jump size j+1).
  double rate_dot(int j, const MultiTime& t) const {
    return rates_.row(j).dot(t);
  }

  /// Column sums mu_i = lambda_1i + ... + lambda_ki.
  Eigen::VectorXd column_sums() const { return rates_.colwise().sum(); }

  /// Rates of coordinate i viewed as a one-parameter GCP (k x 1).
  RateMatrix column(int i) const { return RateMatrix(rates_.col(i)); }

 private:
  Eigen::MatrixXd rates_;
};

/// Evaluated probabilities p(n) for n = 0..n_max.
struct PmfTable {
  Eigen::VectorXd probs;
  double mass_accounted = 0.0;

  int n_max() const { return static_cast<int>(probs.size()) - 1; }
};

/// Throws std::invalid_argument unless t is component-wise >= 0 and of
/// the given dimension.
void validate_multitime(const MultiTime& t, int dims);

/// All solutions of sum_j j x_j = n with x_j >= 0, each exactly once,
/// first coordinate descending.  Throws if more than the enumeration
/// cap (1e7) solutions exist.
std::vector<Composition> enumerate_omega(int k, int n);

/// Weak compositions of n into d non-negative parts, lexicographic.
std::vector<std::vector<int>> enumerate_theta(int n, int d);

/// p(n,t) by direct enumeration of Omega(k,n), each term in log space.
double pmf_direct(const RateMatrix& rates, const MultiTime& t, int n);

/// Full table 0..n_max by k-fold convolution of j-dilated Poisson pmfs.
/// This is the production path; the enumeration routes exist as
/// cross-checking oracles.
PmfTable pmf_convolution(const RateMatrix& rates, const MultiTime& t,
                         int n_max);

/// Full table 0..n_max through the sum-of-independent-GCPs form: the
/// per-coordinate one-parameter GCP pmfs combined over Theta(n,d).
PmfTable pmf_sum_of_gcps(const RateMatrix& rates, const MultiTime& t,
                         int n_max);

/// Probability generating function E u^M(t) = exp(-sum_j Lambda_j.t (1-u^j)).
double pgf(const RateMatrix& rates, const MultiTime& t, double u);

/// Moment generating function at real u.
double mgf(const RateMatrix& rates, const MultiTime& t, double u);

double mean(const RateMatrix& rates, const MultiTime& t);
double variance(const RateMatrix& rates, const MultiTime& t);

/// Truncation index N* = mean + 12 sqrt(variance) + 20 used by the
/// normalization checks.
int truncation_index(const RateMatrix& rates, const MultiTime& t);

}  // namespace mgcp

#endif
