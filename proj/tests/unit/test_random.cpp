#include <doctest.h>

#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"
#include "gsteer/symplectic.hpp"

using namespace gsteer;

TEST_CASE("random passive transformations are orthogonal and symplectic") {
  Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    const Matrix o = random_orthogonal_symplectic(n, rng);
    CHECK((o * o.transpose() - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(is_symplectic(o));
    CHECK(is_symplectic(random_symplectic(n, kDefaultMaxSqueeze, rng)));
  }
}

TEST_CASE("no squeezing and unit temperature gives the vacuum") {
  const CovarianceMatrix s = random_cm(2, 1, 1.0, std::uint64_t{9}, 0.0);
  CHECK((s.matrix() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unit temperature gives pure states") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const CovarianceMatrix s = random_cm(1 + trial % 3, 1 + trial % 2, 1.0, rng);
    for (double nu : symplectic_eigenvalues(s.matrix())) CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("seeded generation is reproducible") {
  const CovarianceMatrix s1 = random_cm(2, 2, 5.0, std::uint64_t{42});
  const CovarianceMatrix s2 = random_cm(2, 2, 5.0, std::uint64_t{42});
  const CovarianceMatrix s3 = random_cm(2, 2, 5.0, std::uint64_t{43});
  CHECK(s1.matrix() == s2.matrix());
  CHECK(s1.matrix() != s3.matrix());
}

TEST_CASE("random states at defaults are always bona fide") {
  Rng rng(3);
  int failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const CovarianceMatrix s = random_cm(1 + trial % 2, 1 + (trial / 2) % 2, kDefaultTemperatureScale, rng);
    if (!is_bona_fide(s)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("temperatures lie in [1, scale]") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = random_single_party_cm(3, 4.0, rng);
    for (double nu : symplectic_eigenvalues(m)) {
      CHECK(nu >= 1.0 - 1e-9);
      CHECK(nu <= 4.0 + 1e-9);
    }
  }
}

TEST_CASE("argument validation") {
  Rng rng(5);
  CHECK_THROWS_AS(random_cm(0, 1, 2.0, rng), StructuralError);
  CHECK_THROWS_AS(random_cm(1, 1, 0.5, rng), DomainError);
  CHECK_THROWS_AS(random_symplectic(2, -1.0, rng), DomainError);
}
