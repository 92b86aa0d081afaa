#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer {

/// Zero-mean phase-space samples drawn with the CM itself as the classical
/// covariance (not sigma / 2). Every identity checked against these samples
/// (Schur complements, determinant ratios) is invariant under that choice.
class SampleBatch {
 public:
  SampleBatch(Matrix samples, std::uint64_t seed, int n_modes_a, int n_modes_b);

  /// One sample per row, 2(n_a + n_b) columns.
  const Matrix& samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }
  Eigen::Index count() const { return samples_.rows(); }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }

  Vector mean() const;
  /// Unbiased sample covariance.
  Matrix covariance() const;

 private:
  Matrix samples_;
  std::uint64_t seed_;
  int n_a_;
  int n_b_;
};

/// Draws `count` samples through the symmetric square root of sigma.
///
/// Sample i depends only on (seed, i): a counter-based generator keys every
/// sample separately, so the batch is bitwise identical for any `workers`.
/// workers == 0 picks the hardware concurrency.
SampleBatch sample_gaussian(const CovarianceMatrix& sigma, Eigen::Index count, std::uint64_t seed,
                            unsigned workers = 0);

struct ReidEstimate {
  double product = 0.0;         ///< V_{x|x} * V_{p|p}
  double var_x = 0.0;           ///< residual variance of the x regression
  double var_p = 0.0;
  double standard_error = 0.0;  ///< of `product`
};

/// Conditional variances of the steered mode by least squares: x on x and
/// p on p of the other mode. For standard-form states the product converges
/// to det of the steered party's Schur complement.
ReidEstimate empirical_reid_product(const SampleBatch& batch, Party steered);

inline constexpr Eigen::Index kMinReidSamples = 10000;

/// Symplectic eigenvalues from the Hermitian matrix sqrt(M) (i Omega) sqrt(M),
/// independent of the Omega*M route used by symplectic_eigenvalues().
std::vector<double> dense_eigen_crosscheck(const Matrix& m);

/// One sample per line, comma separated, 17 significant digits.
void write_batch_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace gsteer
