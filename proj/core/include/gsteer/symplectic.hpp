#pragma once

#include <vector>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer {

/// Williamson spectrum of a positive-definite matrix together with the
/// quality of the +-i nu pairing it was extracted from.
struct SymplecticSpectrum {
  std::vector<double> values;  ///< ascending, one per mode
  double pairing_error = 0.0;  ///< worst relative mismatch inside a pair
  bool accurate = true;        ///< pairing_error within Tolerances::pairing
};

/// Symplectic eigenvalues from the eigenvalues of the real matrix Omega*M.
/// Throws DomainError when M is not positive definite, StructuralError for
/// odd or non-square input.
SymplecticSpectrum symplectic_spectrum(const Matrix& m, const Tolerances& tol = kDefaultTolerances);

std::vector<double> symplectic_eigenvalues(const Matrix& m,
                                           const Tolerances& tol = kDefaultTolerances);

struct BonaFideCheck {
  bool ok = false;
  /// Minimum eigenvalue within `threshold` of zero: the state sits on the
  /// physicality boundary (every pure state does).
  bool marginal = false;
  double min_eigenvalue = 0.0;  ///< of sigma + i Omega
  double threshold = 0.0;       ///< tol plus the eigensolver noise floor
};

/// sigma + i Omega >= 0 for a single-party (or whole-system) matrix.
BonaFideCheck check_bona_fide(const Matrix& sigma, double tol = kDefaultTolerances.psd);
BonaFideCheck check_bona_fide(const CovarianceMatrix& sigma, double tol = kDefaultTolerances.psd);

bool is_bona_fide(const Matrix& sigma, double tol = kDefaultTolerances.psd);
bool is_bona_fide(const CovarianceMatrix& sigma, double tol = kDefaultTolerances.psd);

/// Flips the sign of every momentum of subsystem B. An exact involution.
CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma);

bool is_ppt(const CovarianceMatrix& sigma, double tol = kDefaultTolerances.psd);

bool is_symplectic(const Matrix& s, double tol = kDefaultTolerances.symplectic);

/// (S_A (+) S_B) sigma (S_A (+) S_B)^T. Throws DomainError unless both
/// factors are symplectic of the right size.
CovarianceMatrix apply_local_symplectic(const CovarianceMatrix& sigma, const Matrix& s_a,
                                        const Matrix& s_b,
                                        const Tolerances& tol = kDefaultTolerances);

/// Gaussian channel given by a Stinespring-style dilation: the system is
/// joined with an ancilla in state `ancilla_cm`, the pair evolves under
/// `symplectic` (system modes first), and the ancilla is discarded.
class GaussianChannelDilation {
 public:
  GaussianChannelDilation(Matrix ancilla_cm, Matrix symplectic,
                          const Tolerances& tol = kDefaultTolerances);

  int ancilla_modes() const { return static_cast<int>(ancilla_cm_.rows() / 2); }
  int system_modes() const { return static_cast<int>(symplectic_.rows() / 2) - ancilla_modes(); }
  const Matrix& ancilla_cm() const { return ancilla_cm_; }
  const Matrix& symplectic() const { return symplectic_; }

  /// Applies the channel to a single-party CM of system_modes() modes.
  Matrix apply(const Matrix& system_cm) const;

 private:
  Matrix ancilla_cm_;
  Matrix symplectic_;
};

/// Runs the channel on Alice's modes. Bob's block is copied unchanged.
CovarianceMatrix apply_channel_A(const CovarianceMatrix& sigma, const GaussianChannelDilation& ch);

// Elementary symplectic matrices (xpxp order).

/// Phase rotation by theta on one mode.
Matrix rotation(double theta);
/// Single-mode squeezer diag(z, 1/z).
Matrix squeezer(double z);
/// Beamsplitter of transmissivity tau between two modes.
Matrix beamsplitter(double tau);
/// Exchanges two blocks of `modes` modes each.
Matrix mode_swap(int modes);

}  // namespace gsteer
