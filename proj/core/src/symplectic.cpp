#include "gsteer/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gsteer/errors.hpp"

namespace gsteer {
namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw StructuralError(std::string(what) + " must be a non-empty square matrix of even size (got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
}

// Backward-error floor of a dense Hermitian eigensolve on a matrix of this size.
double eigensolver_noise(const Matrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, norm);
}

}  // namespace

SymplecticSpectrum symplectic_spectrum(const Matrix& m, const Tolerances& tol) {
  require_even_square(m, "matrix");
  const Eigen::Index dim = m.rows();
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw DomainError("symplectic eigenvalues need a positive-definite matrix");
  }

  const Matrix om = omega(static_cast<int>(dim / 2));
  Eigen::EigenSolver<Matrix> solver(om * sym, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigenvalue iteration for Omega*M did not converge");
  }

  // Eigenvalues of Omega*M are +-i nu_j; the real parts vanish in exact arithmetic.
  const auto ev = solver.eigenvalues();
  std::vector<double> moduli(static_cast<std::size_t>(dim));
  double real_part = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    moduli[static_cast<std::size_t>(k)] = std::abs(ev[k].imag());
    real_part = std::max(real_part, std::abs(ev[k].real()));
  }
  std::sort(moduli.begin(), moduli.end());

  SymplecticSpectrum out;
  out.values.reserve(moduli.size() / 2);
  for (std::size_t k = 0; k + 1 < moduli.size(); k += 2) {
    const double lo = moduli[k];
    const double hi = moduli[k + 1];
    const double scale = std::max(1.0, hi);
    out.pairing_error = std::max({out.pairing_error, (hi - lo) / scale, real_part / scale});
    out.values.push_back(0.5 * (lo + hi));
  }
  out.accurate = out.pairing_error <= tol.pairing;
  return out;
}

std::vector<double> symplectic_eigenvalues(const Matrix& m, const Tolerances& tol) {
  return symplectic_spectrum(m, tol).values;
}

BonaFideCheck check_bona_fide(const Matrix& sigma, double tol) {
  require_even_square(sigma, "covariance matrix");
  const Eigen::Index dim = sigma.rows();
  Eigen::MatrixXcd h(dim, dim);
  h.real() = 0.5 * (sigma + sigma.transpose());
  h.imag() = omega(static_cast<int>(dim / 2));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DomainError("Hermitian eigensolver failed on sigma + i Omega");
  }

  BonaFideCheck out;
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.threshold = tol + eigensolver_noise(sigma);
  out.ok = out.min_eigenvalue >= -out.threshold;
  out.marginal = std::abs(out.min_eigenvalue) <= out.threshold;
  return out;
}

BonaFideCheck check_bona_fide(const CovarianceMatrix& sigma, double tol) {
  return check_bona_fide(sigma.matrix(), tol);
}

bool is_bona_fide(const Matrix& sigma, double tol) { return check_bona_fide(sigma, tol).ok; }

bool is_bona_fide(const CovarianceMatrix& sigma, double tol) {
  return check_bona_fide(sigma.matrix(), tol).ok;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma) {
  const Eigen::Index dim = sigma.dim();
  const Eigen::Index first_b = 2 * sigma.n_a();
  Vector sign = Vector::Ones(dim);
  for (Eigen::Index k = first_b + 1; k < dim; k += 2) sign[k] = -1.0;
  Matrix out = sign.asDiagonal() * sigma.matrix() * sign.asDiagonal();
  return CovarianceMatrix(std::move(out), sigma.n_a(), sigma.n_b());
}

bool is_ppt(const CovarianceMatrix& sigma, double tol) {
  return is_bona_fide(partial_transpose(sigma), tol);
}

bool is_symplectic(const Matrix& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
  const Matrix om = omega(static_cast<int>(s.rows() / 2));
  const double scale = std::max(1.0, s.cwiseAbs().rowwise().sum().maxCoeff());
  return (s * om * s.transpose() - om).cwiseAbs().maxCoeff() <= tol * scale * scale;
}

CovarianceMatrix apply_local_symplectic(const CovarianceMatrix& sigma, const Matrix& s_a,
                                        const Matrix& s_b, const Tolerances& tol) {
  if (s_a.rows() != 2 * sigma.n_a() || s_b.rows() != 2 * sigma.n_b()) {
    throw StructuralError("local symplectic sizes do not match the partition");
  }
  if (!is_symplectic(s_a, tol.symplectic)) throw DomainError("S_A is not symplectic");
  if (!is_symplectic(s_b, tol.symplectic)) throw DomainError("S_B is not symplectic");
  const Matrix s = block_diag(s_a, s_b);
  Matrix out = s * sigma.matrix() * s.transpose();
  out = 0.5 * (out + out.transpose()).eval();
  return CovarianceMatrix(std::move(out), sigma.n_a(), sigma.n_b());
}

GaussianChannelDilation::GaussianChannelDilation(Matrix ancilla_cm, Matrix symplectic,
                                                 const Tolerances& tol)
    : ancilla_cm_(std::move(ancilla_cm)), symplectic_(std::move(symplectic)) {
  require_even_square(ancilla_cm_, "ancilla CM");
  require_even_square(symplectic_, "dilation symplectic");
  if (symplectic_.rows() <= ancilla_cm_.rows()) {
    throw StructuralError("dilation symplectic must act on at least one system mode");
  }
  if (!is_bona_fide(ancilla_cm_, tol.psd)) throw DomainError("ancilla CM is not bona fide");
  if (!is_symplectic(symplectic_, tol.symplectic)) throw DomainError("dilation matrix is not symplectic");
}

Matrix GaussianChannelDilation::apply(const Matrix& system_cm) const {
  const Eigen::Index ns = 2 * system_modes();
  if (system_cm.rows() != ns || system_cm.cols() != ns) {
    throw StructuralError("channel expects a " + std::to_string(ns) + "x" + std::to_string(ns) +
                          " system CM");
  }
  const Eigen::Index ne = ancilla_cm_.rows();
  const auto s_ss = symplectic_.topLeftCorner(ns, ns);
  const auto s_se = symplectic_.topRightCorner(ns, ne);
  Matrix out = s_ss * system_cm * s_ss.transpose() + s_se * ancilla_cm_ * s_se.transpose();
  return 0.5 * (out + out.transpose());
}

CovarianceMatrix apply_channel_A(const CovarianceMatrix& sigma, const GaussianChannelDilation& ch) {
  if (ch.system_modes() != sigma.n_a()) {
    throw StructuralError("channel acts on " + std::to_string(ch.system_modes()) +
                          " modes but A has " + std::to_string(sigma.n_a()));
  }
  const Eigen::Index na = 2 * sigma.n_a();
  const Eigen::Index nb = 2 * sigma.n_b();
  const auto s_ss = ch.symplectic().topLeftCorner(na, na);

  Matrix out = sigma.matrix();
  out.topLeftCorner(na, na) = ch.apply(sigma.a_block());
  const Matrix c = s_ss * sigma.c_block();
  out.topRightCorner(na, nb) = c;
  out.bottomLeftCorner(nb, na) = c.transpose();
  return CovarianceMatrix(std::move(out), sigma.n_a(), sigma.n_b());
}

Matrix rotation(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Matrix squeezer(double z) {
  if (!(z > 0.0)) throw DomainError("squeezing factor must be positive");
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = z;
  s(1, 1) = 1.0 / z;
  return s;
}

Matrix beamsplitter(double tau) {
  if (tau < 0.0 || tau > 1.0) throw DomainError("transmissivity must lie in [0, 1]");
  const double t = std::sqrt(tau);
  const double r = std::sqrt(1.0 - tau);
  Matrix s(4, 4);
  s << t, 0, r, 0,
       0, t, 0, r,
      -r, 0, t, 0,
       0, -r, 0, t;
  return s;
}

Matrix mode_swap(int modes) {
  if (modes < 1) throw StructuralError("mode_swap needs at least one mode");
  const Eigen::Index n = 2 * modes;
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n).setIdentity();
  return s;
}

}  // namespace gsteer
