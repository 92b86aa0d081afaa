#include "gsteer/twomode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gsteer/errors.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {
namespace {

double det2(const Matrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

void require_two_mode(const CovarianceMatrix& sigma, const char* what) {
  if (sigma.n_a() != 1 || sigma.n_b() != 1) {
    throw StructuralError(std::string(what) + " needs a two-mode (1 + 1) state");
  }
}

bool close_rel(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

// Relative precision needed to recognize the extremal family, and how far
// into the a -> infinity limit a state has to be before its asymptotic
// entanglement value is reported.
constexpr double kFamilyMatchTol = 1e-8;
constexpr double kAsymptoticRatio = 1e6;

std::optional<double> match_extremal(const StandardFormParams& sf) {
  const double denom = sf.b - sf.a + 1.0;
  if (!(denom > 0.0)) return std::nullopt;
  const double s = sf.a / denom;
  if (s < 1.0 - kFamilyMatchTol || sf.a < s * (1.0 - kFamilyMatchTol)) return std::nullopt;
  const double c2 = (sf.a - 1.0) * (s + 1.0) * sf.a / s;
  if (!close_rel(sf.c * sf.c, c2, kFamilyMatchTol)) return std::nullopt;
  if (!close_rel(sf.d, -sf.c, kFamilyMatchTol)) return std::nullopt;
  if (sf.a < kAsymptoticRatio * s) return std::nullopt;
  return std::max(1.0, s);
}

}  // namespace

CovarianceMatrix StandardFormParams::to_cm() const {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = c;
  m(1, 3) = m(3, 1) = d;
  return CovarianceMatrix(std::move(m), 1, 1);
}

StandardFormParams to_standard_form(const CovarianceMatrix& sigma, const Tolerances& tol) {
  require_two_mode(sigma, "to_standard_form");
  const Matrix a_block = sigma.a_block();
  const Matrix b_block = sigma.b_block();
  const Matrix c_block = sigma.c_block();
  const double det_a = det2(a_block);
  const double det_b = det2(b_block);
  const double det_c = det2(c_block);
  if (!(det_a > 0.0) || !(det_b > 0.0) || !(a_block(0, 0) > 0.0) || !(b_block(0, 0) > 0.0)) {
    throw InconsistentInvariantsError("local blocks are not positive definite");
  }

  StandardFormParams sf;
  sf.a = std::sqrt(det_a);
  sf.b = std::sqrt(det_b);

  // A = a S S^T with S = sqrt(A / a) symplectic, likewise for B. After
  // undoing S_A and S_B the correlation block is brought to diag(c, d) by
  // local rotations, i.e. by its singular value decomposition.
  const Eigen::SelfAdjointEigenSolver<Matrix> ea(a_block / sf.a);
  const Eigen::SelfAdjointEigenSolver<Matrix> eb(b_block / sf.b);
  const Matrix reduced = ea.operatorInverseSqrt() * c_block * eb.operatorInverseSqrt();
  const Eigen::JacobiSVD<Matrix> svd(reduced);
  const Vector sv = svd.singularValues();
  sf.c = sv(0);
  sf.d = det_c < 0.0 ? -sv(1) : (det_c > 0.0 ? sv(1) : 0.0);

  const double scale = std::max(1.0, sf.a * sf.b);
  if (std::abs(sf.c * sf.d - det_c) > 1e-8 * scale) {
    throw InconsistentInvariantsError("reduced correlations do not reproduce det C");
  }
  if (!is_bona_fide(sf.to_cm(), tol.psd)) {
    throw InconsistentInvariantsError("standard-form reconstruction is not bona fide");
  }
  return sf;
}

PurityProfile PurityProfile::from_ratio(double mu_a, double mu_b, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  return {mu_a, mu_b, mu_a * mu_b / eta, eta};
}

PurityProfile purity_profile(const CovarianceMatrix& sigma) {
  require_two_mode(sigma, "purity_profile");
  PurityProfile p;
  p.mu_a = std::exp(-0.5 * log_det(sigma.a_block()));
  p.mu_b = std::exp(-0.5 * log_det(sigma.b_block()));
  p.mu = std::exp(-0.5 * log_det(sigma.matrix()));
  p.eta = p.mu_a * p.mu_b / p.mu;
  return p;
}

double eta_physical(double mu_a, double mu_b) { return mu_a * mu_b + std::abs(mu_a - mu_b); }

double eta_separable(double mu_a, double mu_b) { return mu_a + mu_b - mu_a * mu_b; }

double eta_entangled(double mu_a, double mu_b) {
  return std::sqrt(mu_a * mu_a + mu_b * mu_b - mu_a * mu_a * mu_b * mu_b);
}

RegionLabel classify_two_mode(const PurityProfile& p, double tol) {
  RegionLabel label;
  const bool purities_ok = p.mu_a > 0.0 && p.mu_a <= 1.0 + tol && p.mu_b > 0.0 &&
                           p.mu_b <= 1.0 + tol;
  if (!purities_ok || p.eta < eta_physical(p.mu_a, p.mu_b) - tol || p.eta > 1.0 + tol) {
    label.physicality = Physicality::Unphysical;
    return label;
  }
  if (p.eta >= eta_separable(p.mu_a, p.mu_b)) {
    label.separability = Separability::Separable;
  } else if (p.eta < eta_entangled(p.mu_a, p.mu_b)) {
    label.separability = Separability::Entangled;
  } else {
    label.separability = Separability::Coexistence;
  }
  label.steer_a_to_b = p.eta < p.mu_b;
  label.steer_b_to_a = p.eta < p.mu_a;
  return label;
}

StateClassification classify_state(const CovarianceMatrix& sigma, const Tolerances& tol) {
  return {classify_two_mode(purity_profile(sigma), tol.psd), is_ppt(sigma, tol.psd)};
}

std::string to_string(Physicality p) {
  return p == Physicality::Physical ? "physical" : "unphysical";
}

std::string to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "separable";
    case Separability::Coexistence: return "coexistence";
    case Separability::Entangled: return "entangled";
  }
  return "unknown";
}

CovarianceMatrix tmsv_state(double a) {
  if (!(a >= 1.0)) throw DomainError("TMSV needs a >= 1");
  const double c = std::sqrt(a * a - 1.0);
  return StandardFormParams{a, a, c, -c}.to_cm();
}

CovarianceMatrix extremal_state(double s, double a) {
  if (!(s >= 1.0) || !(a >= s)) throw DomainError("extremal state needs a >= s >= 1");
  const double b = a - 1.0 + a / s;
  const double c = std::sqrt((a - 1.0) * (s + 1.0) * a / s);
  return StandardFormParams{a, b, c, -c}.to_cm();
}

std::optional<CovarianceMatrix> witness_state(const PurityProfile& p, const Tolerances& tol) {
  if (classify_two_mode(p, tol.psd).physicality != Physicality::Physical) return std::nullopt;
  const double a = 1.0 / std::min(p.mu_a, 1.0);
  const double b = 1.0 / std::min(p.mu_b, 1.0);
  const double z = std::sqrt(std::max(0.0, a * b * (1.0 - p.eta)));
  CovarianceMatrix sigma = StandardFormParams{a, b, z, -z}.to_cm();
  if (!is_bona_fide(sigma, tol.psd)) return std::nullopt;
  return sigma;
}

std::string to_string(EntanglementKind k) {
  switch (k) {
    case EntanglementKind::Exact: return "exact";
    case EntanglementKind::ExactAsymptotic: return "exact-asymptotic";
    case EntanglementKind::BoundsOnly: return "bounds-only";
  }
  return "unknown";
}

EntanglementEstimate entanglement_renyi2(const CovarianceMatrix& sigma, const Tolerances& tol) {
  require_two_mode(sigma, "entanglement_renyi2");
  EntanglementEstimate out;
  const double g = std::max(steering_measure(sigma, Direction::AtoB, tol),
                            steering_measure(sigma, Direction::BtoA, tol));
  out.lower_bound = g;

  if (std::abs(log_det(sigma.matrix())) <= 1e-8) {
    out.kind = EntanglementKind::Exact;
    out.value = renyi2_entropy(sigma.a_block());
    return out;
  }

  try {
    for (const CovarianceMatrix& candidate : {sigma, sigma.swapped()}) {
      if (auto s = match_extremal(to_standard_form(candidate, tol))) {
        out.kind = EntanglementKind::ExactAsymptotic;
        out.value = std::log(2.0 * *s + 1.0);
        out.extremal_s = *s;
        return out;
      }
    }
  } catch (const InconsistentInvariantsError&) {
    // Not reducible, so not a member of the family; fall through to bounds.
  }
  return out;
}

BoundsReport steering_bounds_check(const CovarianceMatrix& sigma, const Tolerances& tol) {
  require_two_mode(sigma, "steering_bounds_check");
  BoundsReport r;
  r.g_a_to_b = steering_measure(sigma, Direction::AtoB, tol);
  r.g_b_to_a = steering_measure(sigma, Direction::BtoA, tol);
  r.asymmetry = std::abs(r.g_b_to_a - r.g_a_to_b);
  const double norm = sigma.matrix().cwiseAbs().rowwise().sum().maxCoeff();
  r.tolerance = std::max(kBoundsTolerance, 16.0 * std::numeric_limits<double>::epsilon() * norm);

  auto sandwich_floor = [](double g) {
    const double em1 = std::expm1(g);
    return em1 > 1.0 ? std::log(em1) : 0.0;
  };
  auto add = [&r](std::string name, double slack) {
    const bool holds = slack >= -r.tolerance;
    r.defect = r.defect || !holds;
    r.checks.push_back({std::move(name), slack, holds});
  };

  add("b_to_a_above_floor", r.g_b_to_a - sandwich_floor(r.g_a_to_b));
  add("b_to_a_below_ceiling", std::log(std::exp(r.g_a_to_b) + 1.0) - r.g_b_to_a);
  add("a_to_b_above_floor", r.g_a_to_b - sandwich_floor(r.g_b_to_a));
  add("a_to_b_below_ceiling", std::log(std::exp(r.g_b_to_a) + 1.0) - r.g_a_to_b);
  add("asymmetry_at_most_ln2", std::numbers::ln2 - r.asymmetry);

  const EntanglementEstimate e = entanglement_renyi2(sigma, tol);
  if (e.value) {
    const double floor = std::max(0.0, std::log(0.5 * std::expm1(*e.value)));
    add("a_to_b_at_most_e", *e.value - r.g_a_to_b);
    add("b_to_a_at_most_e", *e.value - r.g_b_to_a);
    add("a_to_b_above_e_floor", r.g_a_to_b - floor);
    add("b_to_a_above_e_floor", r.g_b_to_a - floor);
  }
  return r;
}

double KeyRate::bits() const { return nats / std::numbers::ln2; }

KeyRate key_rate_bound(double g, Reconciliation reconciliation) {
  if (!(g >= 0.0)) throw DomainError("steering measure must be non-negative");
  KeyRate k;
  k.nats = std::max(0.0, g + std::numbers::ln2 - 1.0);
  k.reconciliation = reconciliation;
  k.measure = reconciliation == Reconciliation::Direct ? Direction::BtoA : Direction::AtoB;
  return k;
}

double key_rate_from_reid(double reid_product) {
  if (!(reid_product > 0.0)) throw DomainError("conditional-variance product must be positive");
  return std::max(0.0, std::log(2.0 / (std::numbers::e * std::sqrt(reid_product))));
}

std::string to_string(Reconciliation r) { return r == Reconciliation::Direct ? "direct" : "reverse"; }

}  // namespace gsteer
