#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsteer/errors.hpp"
#include "gsteer/oracle.hpp"
#include "gsteer/random.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/symplectic.hpp"
#include "gsteer/twomode.hpp"
#include "test_helpers.hpp"

using namespace gsteer;
using testing_ref::diag;

TEST_CASE("identity samples have unit variance") {
  const SampleBatch b = sample_gaussian(CovarianceMatrix::vacuum(1, 1), 1000000, 1);
  const Matrix cov = b.covariance();
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    CHECK(cov(i, i) >= 0.99);
    CHECK(cov(i, i) <= 1.01);
  }
  // Mean within five standard errors of zero.
  CHECK(b.mean().cwiseAbs().maxCoeff() < 5.0 / std::sqrt(1e6));
}

TEST_CASE("sampling is deterministic and independent of the worker count") {
  const CovarianceMatrix s = tmsv_state(2.0);
  const SampleBatch one = sample_gaussian(s, 5001, 77, 1);
  const SampleBatch again = sample_gaussian(s, 5001, 77, 1);
  const SampleBatch many = sample_gaussian(s, 5001, 77, 7);
  CHECK(one.samples() == again.samples());
  CHECK(one.samples() == many.samples());
  CHECK(one.seed() == 77);
  const SampleBatch other = sample_gaussian(s, 5001, 78, 1);
  CHECK(one.samples() != other.samples());
}

TEST_CASE("empirical covariance matches the CM") {
  const CovarianceMatrix s = tmsv_state(2.0);
  const SampleBatch b = sample_gaussian(s, 1000000, 3);
  const double rel = (b.covariance() - s.matrix()).norm() / s.matrix().norm();
  CHECK(rel < 0.01);
}

TEST_CASE("sampling rejects a non-positive CM") {
  // Symmetric and finite but indefinite; the CM type itself accepts it.
  const CovarianceMatrix bad(diag({1, -1, 1, 1}), 1, 1);
  CHECK_THROWS_AS(sample_gaussian(bad, 10, 1), IllConditionedError);
}

TEST_CASE("Reid products from samples") {
  const CovarianceMatrix prod = CovarianceMatrix::product(diag({2, 2}), diag({3, 3}));
  const ReidEstimate p = empirical_reid_product(sample_gaussian(prod, 1000000, 5), Party::B);
  CHECK(std::abs(p.product / 9.0 - 1.0) < 0.02);

  const ReidEstimate t = empirical_reid_product(sample_gaussian(tmsv_state(2.0), 1000000, 6), Party::B);
  CHECK(std::abs(t.product / 0.25 - 1.0) < 0.02);
  CHECK(t.standard_error == doctest::Approx(t.product * std::sqrt(4.0 / (1e6 - 2.0))));

  const CovarianceMatrix x = extremal_state(2.0, 1e3);
  const double target_b = reid_variances(x).b;
  const double target_a = reid_variances(x).a;
  const SampleBatch xb = sample_gaussian(x, 1000000, 7);
  CHECK(std::abs(empirical_reid_product(xb, Party::B).product / target_b - 1.0) < 0.02);
  CHECK(std::abs(empirical_reid_product(xb, Party::A).product / target_a - 1.0) < 0.02);
}

TEST_CASE("Reid estimate error shrinks like 1/sqrt(N)") {
  const CovarianceMatrix s = tmsv_state(3.0);
  const double target = reid_variances(s).b;
  double err_small = 0.0, err_large = 0.0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    err_small += std::abs(empirical_reid_product(sample_gaussian(s, 10000, 100 + seed), Party::B).product - target);
    err_large += std::abs(empirical_reid_product(sample_gaussian(s, 640000, 200 + seed), Party::B).product - target);
  }
  // Expected ratio 8; accept a generous band.
  const double ratio = err_small / err_large;
  CHECK(ratio > 3.0);
  CHECK(ratio < 25.0);
}

TEST_CASE("Reid estimate error paths") {
  CHECK_THROWS_AS(empirical_reid_product(sample_gaussian(tmsv_state(2.0), 100, 1), Party::B), PreconditionError);
  CHECK_THROWS_AS(empirical_reid_product(sample_gaussian(CovarianceMatrix::vacuum(2, 1), 20000, 1), Party::B),
                  StructuralError);
  const SampleBatch zeros(Matrix::Zero(20000, 4), 0, 1, 1);
  CHECK_THROWS_AS(empirical_reid_product(zeros, Party::B), DegenerateDataError);
  CHECK_THROWS_AS(SampleBatch(Matrix::Zero(10, 3), 0, 1, 1), StructuralError);
}

TEST_CASE("dense cross-check of symplectic eigenvalues") {
  for (double v : dense_eigen_crosscheck(Matrix::Identity(4, 4))) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto single = dense_eigen_crosscheck(diag({2, 8}));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == doctest::Approx(4.0).epsilon(1e-12));

  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const CovarianceMatrix s = random_cm(1 + i % 2, 1 + (i / 2) % 2, 1.0 + i % 9, rng);
    const auto a = dense_eigen_crosscheck(s.matrix());
    const auto b = symplectic_eigenvalues(s.matrix());
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-8 * std::max(1.0, b[k]));
  }
  CHECK_THROWS_AS(dense_eigen_crosscheck(Matrix::Identity(3, 3)), StructuralError);
}

TEST_CASE("sample CSV") {
  const SampleBatch b = sample_gaussian(CovarianceMatrix::vacuum(1, 1), 3, 9, 1);
  std::ostringstream out;
  write_batch_csv(b, out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 3);
}
