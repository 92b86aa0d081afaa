#include <doctest.h>

#include <cmath>

#include "gsteer/errors.hpp"
#include "gsteer/oracle.hpp"
#include "gsteer/random.hpp"
#include "gsteer/symplectic.hpp"
#include "gsteer/twomode.hpp"
#include "test_helpers.hpp"

using namespace gsteer;
using testing_ref::diag;

TEST_CASE("bona fide examples") {
  for (int n = 1; n <= 4; ++n) CHECK(is_bona_fide(CovarianceMatrix::vacuum(n, 1)));

  // sigma + i Omega = [[0.5, i], [-i, 0.5]] has eigenvalues 0.5 +- 1.
  const BonaFideCheck half = check_bona_fide(Matrix(0.5 * Matrix::Identity(2, 2)));
  CHECK_FALSE(half.ok);
  CHECK(half.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-14));

  const double a = std::cosh(2.0 * 0.5);
  const BonaFideCheck tmsv = check_bona_fide(tmsv_state(a));
  CHECK(tmsv.ok);
  CHECK(tmsv.marginal);  // pure: sits on the boundary

  const BonaFideCheck thermal = check_bona_fide(CovarianceMatrix::product(diag({3, 3}), diag({2, 2})));
  CHECK(thermal.ok);
  CHECK_FALSE(thermal.marginal);

  CHECK_THROWS_AS(check_bona_fide(Matrix(Matrix::Identity(3, 3))), StructuralError);
}

TEST_CASE("extremal states with huge a stay bona fide") {
  for (double s : {1.0, 2.0, 5.0, 10.0}) {
    for (double a : {s, 10.0 * s, 1e4, 1e6, 1e8}) {
      if (a < s) continue;
      const CovarianceMatrix x = extremal_state(s, a);
      CHECK_MESSAGE(is_bona_fide(x), "s=" << s << " a=" << a);
    }
  }
}

TEST_CASE("symplectic eigenvalue examples") {
  const auto vac = symplectic_eigenvalues(Matrix::Identity(4, 4));
  REQUIRE(vac.size() == 2);
  CHECK(vac[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(vac[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto thermal = symplectic_eigenvalues(diag({3, 3}));
  REQUIRE(thermal.size() == 1);
  CHECK(thermal[0] == doctest::Approx(3.0).epsilon(1e-14));

  // Pure TMSV: det = 1, both eigenvalues 1, and the dense Hermitian route agrees.
  const Matrix t = tmsv_state(2.0).matrix();
  CHECK(testing_ref::det(t) == doctest::Approx(1.0).epsilon(1e-12));
  const auto nu = symplectic_eigenvalues(t);
  const auto dense = dense_eigen_crosscheck(t);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(nu[k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nu[k] == doctest::Approx(dense[k]).epsilon(1e-12));
  }

  // Single mode: nu = sqrt(det).
  CHECK(symplectic_eigenvalues(diag({2, 8}))[0] == doctest::Approx(4.0).epsilon(1e-14));

  const SymplecticSpectrum sp = symplectic_spectrum(diag({2, 8, 1, 1}));
  CHECK(sp.accurate);
  CHECK(sp.pairing_error < 1e-12);
}

TEST_CASE("symplectic eigenvalue errors") {
  CHECK_THROWS_AS(symplectic_eigenvalues(Matrix::Identity(3, 3)), StructuralError);
  CHECK_THROWS_AS(symplectic_eigenvalues(diag({1, -1})), DomainError);
  CHECK_THROWS_AS(symplectic_eigenvalues(Matrix::Zero(2, 2)), DomainError);
}

TEST_CASE("partial transpose") {
  const CovarianceMatrix prod = CovarianceMatrix::product(diag({2, 3}), diag({4, 5}));
  CHECK(partial_transpose(prod).matrix() == prod.matrix());

  const StandardFormParams sf{3.0, 2.0, 1.0, 0.5};
  const Matrix pt = partial_transpose(sf.to_cm()).matrix();
  CHECK(pt == StandardFormParams{3.0, 2.0, 1.0, -0.5}.to_cm().matrix());

  // TMSV a = 2: the partially transposed state has nu = a - sqrt(a^2 - 1).
  const auto nu = symplectic_eigenvalues(partial_transpose(tmsv_state(2.0)).matrix());
  CHECK(nu[0] == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
  CHECK(nu[0] == doctest::Approx(0.2679491924311227).epsilon(1e-12));

  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const CovarianceMatrix s = random_cm(1 + trial % 2, 1 + (trial / 2) % 3, 4.0, rng);
    CHECK(partial_transpose(partial_transpose(s)).matrix() == s.matrix());
  }
}

TEST_CASE("PPT examples") {
  CHECK(is_ppt(CovarianceMatrix::product(diag({2, 3}), diag({4, 0.5}))));
  CHECK_FALSE(is_ppt(tmsv_state(2.0)));
  CHECK(is_ppt(CovarianceMatrix::vacuum(2, 2)));
}

TEST_CASE("local symplectic operations") {
  const CovarianceMatrix t = tmsv_state(2.0);
  CHECK(apply_local_symplectic(t, Matrix::Identity(2, 2), Matrix::Identity(2, 2)).matrix() == t.matrix());

  const CovarianceMatrix rotated = apply_local_symplectic(t, rotation(0.7), rotation(-1.3));
  const auto before = symplectic_eigenvalues(t.matrix());
  const auto after = symplectic_eigenvalues(rotated.matrix());
  for (std::size_t k = 0; k < before.size(); ++k) CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-12));

  const double z = 1.7;
  const CovarianceMatrix sq = apply_local_symplectic(CovarianceMatrix::vacuum(1, 1), squeezer(z), Matrix::Identity(2, 2));
  CHECK((sq.matrix() - diag({z * z, 1 / (z * z), 1, 1})).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(apply_local_symplectic(t, diag({2, 2}), Matrix::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS(apply_local_symplectic(t, Matrix::Identity(4, 4), Matrix::Identity(2, 2)), StructuralError);
}

TEST_CASE("local symplectics preserve spectra and determinant") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int na = 1 + trial % 2;
    const int nb = 1 + (trial / 2) % 2;
    const CovarianceMatrix s = random_cm(na, nb, 6.0, rng);
    const CovarianceMatrix m = apply_local_symplectic(s, random_symplectic(na, 1.0, rng), random_symplectic(nb, 1.0, rng));
    auto same = [](const std::vector<double>& x, const std::vector<double>& y) {
      for (std::size_t k = 0; k < x.size(); ++k)
        if (!testing_ref::rel_near(x[k], y[k], 1e-9)) return false;
      return true;
    };
    CHECK(same(symplectic_eigenvalues(s.matrix()), symplectic_eigenvalues(m.matrix())));
    CHECK(same(symplectic_eigenvalues(s.a_block()), symplectic_eigenvalues(m.a_block())));
    CHECK(same(symplectic_eigenvalues(s.b_block()), symplectic_eigenvalues(m.b_block())));
    const double d0 = testing_ref::det(s.matrix());
    CHECK(std::abs(testing_ref::det(m.matrix()) - d0) <= 1e-9 * std::abs(d0));
  }
}

TEST_CASE("elementary symplectics are symplectic") {
  CHECK(is_symplectic(rotation(0.3)));
  CHECK(is_symplectic(squeezer(3.0)));
  CHECK(is_symplectic(beamsplitter(0.2)));
  CHECK(is_symplectic(mode_swap(2)));
  CHECK_FALSE(is_symplectic(diag({1, 2})));
  CHECK_FALSE(is_symplectic(Matrix::Identity(3, 3)));
  CHECK_THROWS_AS(beamsplitter(1.5), DomainError);
  CHECK_THROWS_AS(squeezer(0.0), DomainError);
}

TEST_CASE("Gaussian channels on A") {
  const CovarianceMatrix t = tmsv_state(2.0);

  const GaussianChannelDilation identity(diag({3, 3}), Matrix::Identity(4, 4));
  CHECK(apply_channel_A(t, identity).matrix() == t.matrix());

  // 50:50 beamsplitter with a vacuum ancilla: pure loss with transmissivity 1/2.
  const GaussianChannelDilation loss(Matrix::Identity(2, 2), beamsplitter(0.5));
  const CovarianceMatrix lossy = apply_channel_A(t, loss);
  CHECK((lossy.a_block() - 0.5 * (t.a_block() + Matrix::Identity(2, 2))).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((lossy.c_block() - std::sqrt(0.5) * t.c_block()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(lossy.b_block() == t.b_block());
  CHECK(is_bona_fide(lossy));

  const GaussianChannelDilation swap(Matrix::Identity(2, 2), mode_swap(1));
  const CovarianceMatrix replaced = apply_channel_A(t, swap);
  CHECK(replaced.a_block() == Matrix::Identity(2, 2));
  CHECK(replaced.c_block().cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(apply_channel_A(CovarianceMatrix::vacuum(2, 1), loss), StructuralError);
  CHECK_THROWS_AS(GaussianChannelDilation(Matrix(0.5 * Matrix::Identity(2, 2)), beamsplitter(0.5)), DomainError);
  CHECK_THROWS_AS(GaussianChannelDilation(Matrix::Identity(2, 2), diag({1, 1, 2, 2})), DomainError);
}

TEST_CASE("channels never touch B and keep states physical") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int na = 1 + trial % 2;
    const CovarianceMatrix s = random_cm(na, 1 + (trial / 2) % 2, 5.0, rng);
    const CovarianceMatrix out = apply_channel_A(s, random_channel(na, 1 + trial % 2, rng));
    CHECK(out.b_block() == s.b_block());
    CHECK(is_bona_fide(out));
  }
}
