#include "gsteer/covariance_matrix.hpp"

#include <string>
#include <vector>

#include "gsteer/errors.hpp"

namespace gsteer {

SymplecticForm::SymplecticForm(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw StructuralError("symplectic form needs at least one mode");
  matrix_ = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    matrix_(2 * j, 2 * j + 1) = 1.0;
    matrix_(2 * j + 1, 2 * j) = -1.0;
  }
}

Matrix omega(int n_modes) { return SymplecticForm(n_modes).matrix(); }

CovarianceMatrix::CovarianceMatrix(Matrix data, int n_modes_a, int n_modes_b, double symmetry_tol)
    : data_(std::move(data)), n_a_(n_modes_a), n_b_(n_modes_b) {
  if (n_a_ < 1 || n_b_ < 1) {
    throw StructuralError("both parties need at least one mode (got " + std::to_string(n_a_) +
                          ", " + std::to_string(n_b_) + ")");
  }
  const Eigen::Index expected = 2 * (n_a_ + n_b_);
  if (data_.rows() != expected || data_.cols() != expected) {
    throw StructuralError("covariance matrix is " + std::to_string(data_.rows()) + "x" +
                          std::to_string(data_.cols()) + " but the partition (" +
                          std::to_string(n_a_) + ", " + std::to_string(n_b_) + ") needs " +
                          std::to_string(expected) + "x" + std::to_string(expected));
  }
  if (!data_.allFinite()) throw StructuralError("covariance matrix has non-finite entries");
  const double asym = (data_ - data_.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol) {
    throw StructuralError("covariance matrix is not symmetric (max |M - M^T| = " +
                          std::to_string(asym) + ")");
  }
  // Remove the sub-tolerance asymmetry so later algebra sees an exactly
  // symmetric matrix.
  data_ = 0.5 * (data_ + data_.transpose()).eval();
}

CovarianceMatrix CovarianceMatrix::product(const Matrix& a_block, const Matrix& b_block) {
  if (a_block.rows() % 2 != 0 || b_block.rows() % 2 != 0) {
    throw StructuralError("blocks must have even dimension");
  }
  return CovarianceMatrix(block_diag(a_block, b_block), static_cast<int>(a_block.rows() / 2),
                          static_cast<int>(b_block.rows() / 2));
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes_a, int n_modes_b) {
  const int dim = 2 * (n_modes_a + n_modes_b);
  return CovarianceMatrix(Matrix::Identity(dim, dim), n_modes_a, n_modes_b);
}

Matrix CovarianceMatrix::a_block() const { return data_.topLeftCorner(2 * n_a_, 2 * n_a_); }

Matrix CovarianceMatrix::b_block() const { return data_.bottomRightCorner(2 * n_b_, 2 * n_b_); }

Matrix CovarianceMatrix::c_block() const { return data_.topRightCorner(2 * n_a_, 2 * n_b_); }

CovarianceMatrix CovarianceMatrix::swapped() const {
  const Eigen::Index na = 2 * n_a_;
  const Eigen::Index nb = 2 * n_b_;
  Matrix out(dim(), dim());
  out.topLeftCorner(nb, nb) = b_block();
  out.bottomRightCorner(na, na) = a_block();
  out.topRightCorner(nb, na) = c_block().transpose();
  out.bottomLeftCorner(na, nb) = c_block();
  return CovarianceMatrix(std::move(out), n_b_, n_a_);
}

Matrix block_diag(const Matrix& m1, const Matrix& m2) {
  Matrix out = Matrix::Zero(m1.rows() + m2.rows(), m1.cols() + m2.cols());
  out.topLeftCorner(m1.rows(), m1.cols()) = m1;
  out.bottomRightCorner(m2.rows(), m2.cols()) = m2;
  return out;
}

CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second) {
  const int na = first.n_a() + second.n_a();
  const int nb = first.n_b() + second.n_b();
  const Eigen::Index a1 = 2 * first.n_a(), a2 = 2 * second.n_a();
  const Eigen::Index b1 = 2 * first.n_b(), b2 = 2 * second.n_b();

  // Index maps from each input into the (A1, A2, B1, B2) layout.
  std::vector<Eigen::Index> map1(static_cast<std::size_t>(a1 + b1));
  std::vector<Eigen::Index> map2(static_cast<std::size_t>(a2 + b2));
  for (Eigen::Index i = 0; i < a1; ++i) map1[i] = i;
  for (Eigen::Index i = 0; i < b1; ++i) map1[a1 + i] = a1 + a2 + i;
  for (Eigen::Index i = 0; i < a2; ++i) map2[i] = a1 + i;
  for (Eigen::Index i = 0; i < b2; ++i) map2[a2 + i] = a1 + a2 + b1 + i;

  Matrix out = Matrix::Zero(2 * (na + nb), 2 * (na + nb));
  for (std::size_t i = 0; i < map1.size(); ++i)
    for (std::size_t j = 0; j < map1.size(); ++j)
      out(map1[i], map1[j]) = first.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  for (std::size_t i = 0; i < map2.size(); ++i)
    for (std::size_t j = 0; j < map2.size(); ++j)
      out(map2[i], map2[j]) = second.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return CovarianceMatrix(std::move(out), na, nb);
}

}  // namespace gsteer
