#pragma once

#include <vector>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer {

/// Schur complement of the steering party's block, i.e. the conditional CM
/// of `steered`: for steered == B this is B - C^T A^{-1} C.
///
/// Throws IllConditionedError when the inverted block is not positive
/// definite or its condition number exceeds tol.max_condition.
Matrix schur_complement(const CovarianceMatrix& sigma, Party steered,
                        const Tolerances& tol = kDefaultTolerances);

/// Everything computed for one steering direction.
struct DirectionalSteering {
  double measure = 0.0;      ///< G >= 0, in nats
  std::vector<double> nu;    ///< symplectic eigenvalues of the Schur complement
  bool steerable = false;    ///< some nu < 1 (measure > 0)
  bool marginal = false;     ///< some nu within tol.psd of 1
  bool spectrum_accurate = true;
};

DirectionalSteering steering_detail(const CovarianceMatrix& sigma, Direction direction,
                                    const Tolerances& tol = kDefaultTolerances);

/// Gaussian steerability: max{0, -sum_{nu_j < 1} ln nu_j} over the Schur
/// complement of the steering party.
double steering_measure(const CovarianceMatrix& sigma, Direction direction,
                        const Tolerances& tol = kDefaultTolerances);

/// Renyi-2 entropy 1/2 ln det. Throws DomainError for non positive-definite input.
double renyi2_entropy(const Matrix& m);
double renyi2_entropy(const CovarianceMatrix& sigma);

/// ln det of a symmetric positive-definite matrix via Cholesky.
double log_det(const Matrix& m);

/// S(steering party) - S(sigma). For a single-mode steered party this is
/// the unclamped steering measure; for multimode steered parties it is only
/// a lower bound on it.
double coherent_information(const CovarianceMatrix& sigma, Direction direction);

/// Products of homodyne conditional variances V_{x|x} V_{p|p}.
struct ReidProducts {
  double a = 1.0;  ///< Alice conditioned on Bob: det sigma / det B
  double b = 1.0;  ///< Bob conditioned on Alice: det sigma / det A
};

/// Needs a two-mode CM in standard form (diagonal blocks, diagonal C);
/// otherwise throws PreconditionError pointing to to_standard_form().
ReidProducts reid_variances(const CovarianceMatrix& sigma,
                            const Tolerances& tol = kDefaultTolerances);

/// Seed CM T of a Gaussian measurement on Alice, T + i Omega >= 0.
class MeasurementCM {
 public:
  explicit MeasurementCM(Matrix t, double tol = kDefaultTolerances.psd);

  /// Heterodyne detection on every mode (T = identity).
  static MeasurementCM heterodyne(int n_modes);
  /// Finite-squeezing x-homodyne, T = diag(t, 1/t) per mode.
  static MeasurementCM homodyne(int n_modes, double t = 1e-6);

  int n_modes() const { return static_cast<int>(t_.rows() / 2); }
  const Matrix& matrix() const { return t_; }

 private:
  Matrix t_;
};

/// Bob's CM after Alice's general-dyne measurement: B - C^T (T + A)^{-1} C.
/// Independent of the measurement outcome.
Matrix condition_on_measurement(const CovarianceMatrix& sigma, const MeasurementCM& t,
                                const Tolerances& tol = kDefaultTolerances);

struct SteeringReport {
  double g_a_to_b = 0.0;
  double g_b_to_a = 0.0;
  std::vector<double> nu_a;  ///< spectrum of M^A (A steered by B)
  std::vector<double> nu_b;  ///< spectrum of M^B (B steered by A)
  bool steerable_a_to_b = false;
  bool steerable_b_to_a = false;
  double reid_product_a = 1.0;  ///< det M^A
  double reid_product_b = 1.0;  ///< det M^B
  bool marginal_a_to_b = false;
  bool marginal_b_to_a = false;
};

SteeringReport steering_report(const CovarianceMatrix& sigma,
                               const Tolerances& tol = kDefaultTolerances);

}  // namespace gsteer
