#pragma once

#include <Eigen/Core>

#include "gsteer/tolerances.hpp"

namespace gsteer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Party { A, B };

/// Steering direction. AtoB means Alice measures and Bob is steered.
enum class Direction { AtoB, BtoA };

constexpr Party steered_party(Direction d) { return d == Direction::AtoB ? Party::B : Party::A; }
constexpr Party steering_party(Direction d) { return d == Direction::AtoB ? Party::A : Party::B; }
constexpr Party other(Party p) { return p == Party::A ? Party::B : Party::A; }

/// Block-diagonal symplectic form Omega = (+) [[0, 1], [-1, 0]] in xpxp order.
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes);

  int n_modes() const { return n_modes_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  int n_modes_;
  Matrix matrix_;
};

/// Convenience: the 2n x 2n symplectic form as a plain matrix.
Matrix omega(int n_modes);

/// Covariance matrix of a bipartite Gaussian state.
///
/// Quadratures are ordered (x1, p1, ..., xn, pn) for Alice followed by the
/// same for Bob; the vacuum CM is the identity. The matrix is validated on
/// construction (dimension 2(n_a + n_b), symmetric to `symmetry_tol`) and is
/// immutable afterwards. Physicality is a separate check, see is_bona_fide().
class CovarianceMatrix {
 public:
  CovarianceMatrix(Matrix data, int n_modes_a, int n_modes_b,
                   double symmetry_tol = kDefaultTolerances.symmetry);

  /// Product state A (+) B.
  static CovarianceMatrix product(const Matrix& a_block, const Matrix& b_block);
  /// Vacuum on n_a + n_b modes.
  static CovarianceMatrix vacuum(int n_modes_a, int n_modes_b);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int modes() const { return n_a_ + n_b_; }
  Eigen::Index dim() const { return data_.rows(); }

  const Matrix& matrix() const { return data_; }

  Matrix a_block() const;
  Matrix b_block() const;
  /// Off-diagonal block, 2n_a x 2n_b.
  Matrix c_block() const;
  Matrix block(Party p) const { return p == Party::A ? a_block() : b_block(); }

  /// The same state with the roles of A and B exchanged.
  CovarianceMatrix swapped() const;

 private:
  Matrix data_;
  int n_a_;
  int n_b_;
};

/// Tensor product of two bipartite states, keeping all A modes before all B
/// modes: (A1, A2 | B1, B2).
CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second);

/// Block-diagonal embedding M1 (+) M2.
Matrix block_diag(const Matrix& m1, const Matrix& m2);

}  // namespace gsteer
