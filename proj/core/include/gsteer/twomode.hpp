#pragma once

#include <optional>
#include <string>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer {

/// Two-mode standard form A = diag(a, a), B = diag(b, b), C = diag(c, d),
/// normalized so that c >= |d|.
struct StandardFormParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  CovarianceMatrix to_cm() const;
};

/// Reduces a two-mode CM to standard form by local symplectic operations.
/// The result reproduces the invariants det A, det B, det C and det sigma.
///
/// Throws InconsistentInvariantsError when no physical standard form
/// matches the invariants; that only happens for inputs that are not
/// physical.
StandardFormParams to_standard_form(const CovarianceMatrix& sigma,
                                    const Tolerances& tol = kDefaultTolerances);

struct PurityProfile {
  double mu_a = 1.0;
  double mu_b = 1.0;
  double mu = 1.0;
  double eta = 1.0;  ///< mu_a mu_b / mu

  /// Profile with the given marginal purities and ratio eta.
  static PurityProfile from_ratio(double mu_a, double mu_b, double eta);
};

PurityProfile purity_profile(const CovarianceMatrix& sigma);

// Classification thresholds on eta.
double eta_physical(double mu_a, double mu_b);    ///< eta_0
double eta_separable(double mu_a, double mu_b);   ///< eta_s
double eta_entangled(double mu_a, double mu_b);   ///< eta_e

enum class Physicality { Physical, Unphysical };
enum class Separability { Separable, Coexistence, Entangled };

struct RegionLabel {
  Physicality physicality = Physicality::Physical;
  std::optional<Separability> separability;  ///< empty for unphysical profiles
  bool steer_a_to_b = false;
  bool steer_b_to_a = false;

  bool operator==(const RegionLabel&) const = default;
};

/// Labels a purity profile. Physicality uses eta_0 - tol <= eta <= 1 + tol;
/// the separability and steering thresholds are strict comparisons.
RegionLabel classify_two_mode(const PurityProfile& p, double tol = kDefaultTolerances.psd);

/// Purity-level label plus the state-level separability answer, which for
/// two modes is decided exactly by PPT.
struct StateClassification {
  RegionLabel label;
  bool ppt = true;
};

StateClassification classify_state(const CovarianceMatrix& sigma,
                                   const Tolerances& tol = kDefaultTolerances);

std::string to_string(Physicality p);
std::string to_string(Separability s);

/// Two-mode squeezed vacuum with local CM a * identity. Throws for a < 1.
CovarianceMatrix tmsv_state(double a);

inline constexpr double kDefaultExtremalA = 1e8;

/// Extremal family b = a - 1 + a/s, c = -d = sqrt((a - 1)(s + 1) a / s),
/// a >= s >= 1. Its asymptotic properties hold as a grows; a = 1e8 reaches
/// them to about 1e-8.
CovarianceMatrix extremal_state(double s, double a = kDefaultExtremalA);

/// Standard-form state with c = -d realizing a purity profile, or nothing
/// when no physical state has that profile.
std::optional<CovarianceMatrix> witness_state(const PurityProfile& p,
                                              const Tolerances& tol = kDefaultTolerances);

enum class EntanglementKind { Exact, ExactAsymptotic, BoundsOnly };

std::string to_string(EntanglementKind k);

/// Gaussian Renyi-2 entanglement where a closed form is known. For other
/// states only a lower bound max{G^{A->B}, G^{B->A}} is returned.
struct EntanglementEstimate {
  EntanglementKind kind = EntanglementKind::BoundsOnly;
  std::optional<double> value;
  double lower_bound = 0.0;
  std::optional<double> extremal_s;  ///< set when the extremal family matched
};

EntanglementEstimate entanglement_renyi2(const CovarianceMatrix& sigma,
                                         const Tolerances& tol = kDefaultTolerances);

/// One checked inequality: holds iff slack >= -tolerance.
struct InequalityCheck {
  std::string name;
  double slack = 0.0;
  bool holds = true;
};

struct BoundsReport {
  double g_a_to_b = 0.0;
  double g_b_to_a = 0.0;
  double asymmetry = 0.0;  ///< |G^{B->A} - G^{A->B}|
  /// Allowed negative slack: kBoundsTolerance, widened to the rounding
  /// floor 16 eps ||sigma||_inf for large-norm inputs.
  double tolerance = 0.0;
  std::vector<InequalityCheck> checks;
  /// Some inequality failed beyond tolerance; the library computed
  /// something inconsistent with the proven bounds.
  bool defect = false;
};

inline constexpr double kBoundsTolerance = 1e-8;

BoundsReport steering_bounds_check(const CovarianceMatrix& sigma,
                                   const Tolerances& tol = kDefaultTolerances);

enum class Reconciliation { Direct, Reverse };

struct KeyRate {
  double nats = 0.0;
  Reconciliation reconciliation = Reconciliation::Direct;
  /// Steering direction whose measure feeds the bound: direct reconciliation
  /// uses G^{B->A}, reverse uses G^{A->B}.
  Direction measure = Direction::BtoA;

  double bits() const;
};

/// One-sided device-independent key rate bound max{0, g + ln 2 - 1} in nats.
/// Throws DomainError for negative g.
KeyRate key_rate_bound(double g, Reconciliation reconciliation = Reconciliation::Direct);

/// The same bound written with the Reid conditional-variance product:
/// max{0, ln(2 / (e sqrt(V V)))}.
double key_rate_from_reid(double reid_product);

std::string to_string(Reconciliation r);

}  // namespace gsteer
