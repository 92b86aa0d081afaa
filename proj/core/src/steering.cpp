#include "gsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gsteer/errors.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {
namespace {

// Solves block * X = rhs for a symmetric block, refusing singular blocks.
Matrix guarded_solve(const Matrix& block, const Matrix& rhs, double max_condition,
                     const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > max_condition) {
    throw IllConditionedError(std::string(what) + " is singular or ill-conditioned (eigenvalues " +
                              std::to_string(lo) + " .. " + std::to_string(hi) + ")");
  }
  Eigen::LLT<Matrix> llt(block);
  if (llt.info() != Eigen::Success) {
    throw IllConditionedError(std::string(what) + " failed Cholesky factorization");
  }
  return llt.solve(rhs);
}

Matrix symmetrized(Matrix m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Matrix schur_complement(const CovarianceMatrix& sigma, Party steered, const Tolerances& tol) {
  const Matrix c = sigma.c_block();
  if (steered == Party::B) {
    const Matrix x = guarded_solve(sigma.a_block(), c, tol.max_condition, "block A");
    return symmetrized(sigma.b_block() - c.transpose() * x);
  }
  const Matrix x = guarded_solve(sigma.b_block(), c.transpose(), tol.max_condition, "block B");
  return symmetrized(sigma.a_block() - c * x);
}

DirectionalSteering steering_detail(const CovarianceMatrix& sigma, Direction direction,
                                    const Tolerances& tol) {
  const Matrix m = schur_complement(sigma, steered_party(direction), tol);
  const SymplecticSpectrum spectrum = symplectic_spectrum(m, tol);

  DirectionalSteering out;
  out.nu = spectrum.values;
  out.spectrum_accurate = spectrum.accurate;
  double sum = 0.0;
  for (double nu : spectrum.values) {
    if (nu < 1.0) sum -= std::log(nu);
    if (std::abs(nu - 1.0) <= tol.psd) out.marginal = true;
  }
  out.measure = std::max(0.0, sum);
  out.steerable = out.measure > 0.0;
  return out;
}

double steering_measure(const CovarianceMatrix& sigma, Direction direction, const Tolerances& tol) {
  return steering_detail(sigma, direction, tol).measure;
}

double log_det(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw StructuralError("log_det needs a square matrix");
  Eigen::LLT<Matrix> llt(symmetrized(m));
  if (llt.info() != Eigen::Success) {
    throw DomainError("matrix is not positive definite; its Renyi-2 entropy is undefined");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double renyi2_entropy(const Matrix& m) { return 0.5 * log_det(m); }

double renyi2_entropy(const CovarianceMatrix& sigma) { return renyi2_entropy(sigma.matrix()); }

double coherent_information(const CovarianceMatrix& sigma, Direction direction) {
  return renyi2_entropy(sigma.block(steering_party(direction))) - renyi2_entropy(sigma);
}

ReidProducts reid_variances(const CovarianceMatrix& sigma, const Tolerances& tol) {
  if (sigma.n_a() != 1 || sigma.n_b() != 1) {
    throw PreconditionError("Reid variances are defined here for two-mode states only");
  }
  const Matrix& s = sigma.matrix();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  const double off = std::max({std::abs(s(0, 1)), std::abs(s(2, 3)), std::abs(s(0, 3)),
                               std::abs(s(1, 2)), std::abs(s(0, 0) - s(1, 1)),
                               std::abs(s(2, 2) - s(3, 3))});
  if (off > tol.psd * scale) {
    throw PreconditionError("state is not in standard form; reduce it with to_standard_form() first");
  }
  const double ld = log_det(s);
  return {std::exp(ld - log_det(sigma.b_block())), std::exp(ld - log_det(sigma.a_block()))};
}

MeasurementCM::MeasurementCM(Matrix t, double tol) : t_(std::move(t)) {
  if (t_.rows() != t_.cols() || t_.rows() % 2 != 0 || t_.rows() == 0) {
    throw StructuralError("measurement seed must be a square matrix of even size");
  }
  if ((t_ - t_.transpose()).cwiseAbs().maxCoeff() > kDefaultTolerances.symmetry) {
    throw StructuralError("measurement seed is not symmetric");
  }
  if (!is_bona_fide(t_, tol)) throw DomainError("measurement seed violates T + i Omega >= 0");
}

MeasurementCM MeasurementCM::heterodyne(int n_modes) {
  return MeasurementCM(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

MeasurementCM MeasurementCM::homodyne(int n_modes, double t) {
  if (!(t > 0.0)) throw DomainError("homodyne squeezing t must be positive");
  Vector d(2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    d[2 * j] = t;
    d[2 * j + 1] = 1.0 / t;
  }
  return MeasurementCM(d.asDiagonal().toDenseMatrix());
}

Matrix condition_on_measurement(const CovarianceMatrix& sigma, const MeasurementCM& t,
                                const Tolerances& tol) {
  if (t.n_modes() != sigma.n_a()) {
    throw StructuralError("measurement seed acts on " + std::to_string(t.n_modes()) +
                          " modes but A has " + std::to_string(sigma.n_a()));
  }
  const Matrix c = sigma.c_block();
  const Matrix x = guarded_solve(t.matrix() + sigma.a_block(), c, tol.max_condition, "T + A");
  return symmetrized(sigma.b_block() - c.transpose() * x);
}

SteeringReport steering_report(const CovarianceMatrix& sigma, const Tolerances& tol) {
  const DirectionalSteering ab = steering_detail(sigma, Direction::AtoB, tol);
  const DirectionalSteering ba = steering_detail(sigma, Direction::BtoA, tol);
  const double ld = log_det(sigma.matrix());

  SteeringReport r;
  r.g_a_to_b = ab.measure;
  r.g_b_to_a = ba.measure;
  r.nu_b = ab.nu;
  r.nu_a = ba.nu;
  r.steerable_a_to_b = ab.steerable;
  r.steerable_b_to_a = ba.steerable;
  r.marginal_a_to_b = ab.marginal;
  r.marginal_b_to_a = ba.marginal;
  r.reid_product_b = std::exp(ld - log_det(sigma.a_block()));
  r.reid_product_a = std::exp(ld - log_det(sigma.b_block()));
  return r;
}

}  // namespace gsteer
