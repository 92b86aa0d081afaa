#include "gsteer/random.hpp"

#include <cmath>
#include <complex>

#include <Eigen/QR>

#include "gsteer/errors.hpp"

namespace gsteer {

Matrix random_orthogonal_symplectic(int n_modes, Rng& rng) {
  if (n_modes < 1) throw StructuralError("need at least one mode");
  const Eigen::Index n = n_modes;
  std::normal_distribution<double> normal(0.0, 1.0);

  // Haar unitary from the QR decomposition of a complex Ginibre matrix, with
  // the phases of R's diagonal folded back into Q.
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : std::complex<double>(1.0);
  }

  // U = X + iY acts on (x, p) as [[X, -Y], [Y, X]] in xxpp order; remap to xpxp.
  Matrix o(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = q(i, j).real();
      const double y = q(i, j).imag();
      o(2 * i, 2 * j) = x;
      o(2 * i, 2 * j + 1) = -y;
      o(2 * i + 1, 2 * j) = y;
      o(2 * i + 1, 2 * j + 1) = x;
    }
  }
  return o;
}

Matrix random_symplectic(int n_modes, double max_squeeze, Rng& rng) {
  if (max_squeeze < 0.0) throw DomainError("max_squeeze must be non-negative");
  std::uniform_real_distribution<double> squeeze(0.0, max_squeeze);
  Vector z(2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const double r = max_squeeze > 0.0 ? squeeze(rng) : 0.0;
    z[2 * j] = std::exp(r);
    z[2 * j + 1] = std::exp(-r);
  }
  const Matrix o1 = random_orthogonal_symplectic(n_modes, rng);
  const Matrix o2 = random_orthogonal_symplectic(n_modes, rng);
  return o1 * z.asDiagonal() * o2;
}

Matrix random_single_party_cm(int n_modes, double temperature_scale, Rng& rng,
                              double max_squeeze) {
  if (n_modes < 1) throw StructuralError("need at least one mode");
  if (!(temperature_scale >= 1.0)) throw DomainError("temperature_scale must be >= 1");
  std::uniform_real_distribution<double> temperature(1.0, temperature_scale);
  Vector d(2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    const double nu = temperature_scale > 1.0 ? temperature(rng) : 1.0;
    d[2 * j] = nu;
    d[2 * j + 1] = nu;
  }
  const Matrix s = random_symplectic(n_modes, max_squeeze, rng);
  Matrix out = s * d.asDiagonal() * s.transpose();
  return 0.5 * (out + out.transpose());
}

CovarianceMatrix random_cm(int n_modes_a, int n_modes_b, double temperature_scale, Rng& rng,
                           double max_squeeze) {
  if (n_modes_a < 1 || n_modes_b < 1) throw StructuralError("both parties need at least one mode");
  return CovarianceMatrix(
      random_single_party_cm(n_modes_a + n_modes_b, temperature_scale, rng, max_squeeze),
      n_modes_a, n_modes_b);
}

CovarianceMatrix random_cm(int n_modes_a, int n_modes_b, double temperature_scale,
                           std::uint64_t seed, double max_squeeze) {
  Rng rng(seed);
  return random_cm(n_modes_a, n_modes_b, temperature_scale, rng, max_squeeze);
}

GaussianChannelDilation random_channel(int system_modes, int ancilla_modes, Rng& rng,
                                       double temperature_scale, double max_squeeze) {
  Matrix ancilla = random_single_party_cm(ancilla_modes, temperature_scale, rng, max_squeeze);
  Matrix s = random_symplectic(system_modes + ancilla_modes, max_squeeze, rng);
  return GaussianChannelDilation(std::move(ancilla), std::move(s));
}

}  // namespace gsteer
