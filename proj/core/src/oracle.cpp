#include "gsteer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "gsteer/errors.hpp"

namespace gsteer {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream for sample `index`: the state is a hash of (seed, index).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    state_ = splitmix64(s) ^ (index * 0xd1b54a32d192ed03ULL);
    splitmix64(state_);
  }

  double uniform_open() {
    // 53 random bits mapped into (0, 1].
    return (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
  }

  void fill_normals(double* out, Eigen::Index n) {
    for (Eigen::Index k = 0; k < n; k += 2) {
      const double r = std::sqrt(-2.0 * std::log(uniform_open()));
      const double phi = 2.0 * std::numbers::pi * uniform_open();
      out[k] = r * std::cos(phi);
      if (k + 1 < n) out[k + 1] = r * std::sin(phi);
    }
  }

 private:
  std::uint64_t state_;
};

Matrix symmetric_sqrt(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()));
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw IllConditionedError(std::string(what) + " is not positive definite");
  }
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

SampleBatch::SampleBatch(Matrix samples, std::uint64_t seed, int n_modes_a, int n_modes_b)
    : samples_(std::move(samples)), seed_(seed), n_a_(n_modes_a), n_b_(n_modes_b) {
  if (samples_.cols() != 2 * (n_a_ + n_b_)) throw StructuralError("sample width does not match partition");
  if (samples_.rows() < 1) throw StructuralError("empty sample batch");
}

Vector SampleBatch::mean() const { return samples_.colwise().mean(); }

Matrix SampleBatch::covariance() const {
  const Matrix centered = samples_.rowwise() - samples_.colwise().mean();
  return (centered.transpose() * centered) / static_cast<double>(std::max<Eigen::Index>(1, count() - 1));
}

SampleBatch sample_gaussian(const CovarianceMatrix& sigma, Eigen::Index count, std::uint64_t seed,
                            unsigned workers) {
  if (count < 1) throw DomainError("sample count must be positive");
  const Matrix root = symmetric_sqrt(sigma.matrix(), "covariance matrix");
  const Eigen::Index dim = sigma.dim();

  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrix z(count, dim);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<Eigen::Index>(workers, count));
  const Eigen::Index chunk = (count + workers - 1) / workers;

  auto fill = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      SampleStream stream(seed, static_cast<std::uint64_t>(i));
      stream.fill_normals(z.row(i).data(), dim);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    const Eigen::Index begin = w * chunk;
    const Eigen::Index end = std::min(count, begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  fill(0, std::min(count, chunk));
  for (auto& t : pool) t.join();

  Matrix samples = z * root;  // root is symmetric: row_i = (root * z_i)^T
  return SampleBatch(std::move(samples), seed, sigma.n_a(), sigma.n_b());
}

ReidEstimate empirical_reid_product(const SampleBatch& batch, Party steered) {
  if (batch.n_a() != 1 || batch.n_b() != 1) throw StructuralError("Reid estimate needs a two-mode batch");
  if (batch.count() < kMinReidSamples) {
    throw PreconditionError("Reid estimate needs at least " + std::to_string(kMinReidSamples) +
                            " samples");
  }
  const Eigen::Index target = steered == Party::B ? 2 : 0;
  const Eigen::Index regressor = steered == Party::B ? 0 : 2;
  const Matrix cov = batch.covariance();

  auto residual = [&](Eigen::Index q) {
    const double vr = cov(regressor + q, regressor + q);
    if (!(vr > 1e-300)) throw DegenerateDataError("regressor has zero sample variance");
    const double cv = cov(target + q, regressor + q);
    return cov(target + q, target + q) - cv * cv / vr;
  };

  ReidEstimate out;
  out.var_x = residual(0);
  out.var_p = residual(1);
  out.product = out.var_x * out.var_p;
  // Residual variances of an OLS fit with one regressor plus intercept have
  // relative variance 2 / (N - 2); x and p residuals are independent in
  // standard form.
  const double dof = static_cast<double>(batch.count() - 2);
  out.standard_error = out.product * std::sqrt(4.0 / dof);
  return out;
}

std::vector<double> dense_eigen_crosscheck(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw StructuralError("matrix must be square with even size");
  }
  const Eigen::Index dim = m.rows();
  const Matrix root = symmetric_sqrt(m, "matrix");
  Matrix om = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; j += 2) {
    om(j, j + 1) = 1.0;
    om(j + 1, j) = -1.0;
  }
  Eigen::MatrixXcd h(dim, dim);
  h.real().setZero();
  h.imag() = root * om * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw DomainError("Hermitian eigensolver failed");
  // Ascending order: the upper half holds +nu_j in ascending order.
  std::vector<double> out;
  for (Eigen::Index k = dim / 2; k < dim; ++k) out.push_back(eig.eigenvalues()[k]);
  return out;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  char buf[32];
  const Matrix& s = batch.samples();
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", s(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace gsteer
