#include "gsteer/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <utility>

#include <Eigen/Eigenvalues>

#include "gsteer/oracle.hpp"
#include "gsteer/random.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/symplectic.hpp"
#include "gsteer/twomode.hpp"

namespace gsteer::suites {
namespace {

constexpr std::array<std::pair<int, int>, 4> kPartitions{{{1, 1}, {2, 1}, {1, 2}, {2, 2}}};

Rng suite_rng(const SuiteConfig& cfg, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

// Mixture of temperatures and squeezing so every suite sees pure, weakly
// mixed and strongly mixed states.
CovarianceMatrix varied_cm(int na, int nb, Rng& rng) {
  static constexpr std::array<double, 5> kTemps{1.0, 1.5, 3.0, 10.0, 30.0};
  std::uniform_int_distribution<std::size_t> pick(0, kTemps.size() - 1);
  std::uniform_real_distribution<double> squeeze(0.2, kDefaultMaxSqueeze);
  return random_cm(na, nb, kTemps[pick(rng)], rng, squeeze(rng));
}

void note_violation(SuiteResult& r, double deviation, double limit) {
  r.worst = std::max(r.worst, deviation);
  if (!(deviation <= limit)) ++r.violations;
}

SuiteResult timed(const char* name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.violations > 0) r.passed = false;
  return r;
}

double abs_diff(double x, double y) { return std::abs(x - y); }

}  // namespace

SuiteResult ppt_implies_nonsteerable(const SuiteConfig& cfg) {
  return timed("ppt_implies_nonsteerable", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 1);
    std::size_t ppt_count = 0;
    const std::size_t n = 10 * cfg.trials;
    for (std::size_t t = 0; t < n; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      const CovarianceMatrix sigma = varied_cm(na, nb, rng);
      ++r.trials;
      if (!is_ppt(sigma, cfg.tol.psd)) continue;
      ++ppt_count;
      const double g = std::max(steering_measure(sigma, Direction::AtoB, cfg.tol),
                                steering_measure(sigma, Direction::BtoA, cfg.tol));
      note_violation(r, g, 0.0);
    }
    r.detail = std::to_string(ppt_count) + " PPT states checked";
  });
}

SuiteResult monotonicity(const SuiteConfig& cfg) {
  return timed("monotonicity", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 2);
    std::uniform_int_distribution<int> ancillas(1, 2);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      const CovarianceMatrix sigma = varied_cm(na, nb, rng);
      const GaussianChannelDilation ch = random_channel(na, ancillas(rng), rng);
      const double before = steering_measure(sigma, Direction::AtoB, cfg.tol);
      const double after = steering_measure(apply_channel_A(sigma, ch), Direction::AtoB, cfg.tol);
      ++r.trials;
      note_violation(r, after - before, 1e-9);
    }
  });
}

SuiteResult additivity(const SuiteConfig& cfg) {
  return timed("additivity", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 3);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na1, nb1] = kPartitions[t % kPartitions.size()];
      const auto [na2, nb2] = kPartitions[(t / kPartitions.size()) % kPartitions.size()];
      const CovarianceMatrix s1 = varied_cm(na1, nb1, rng);
      const CovarianceMatrix s2 = varied_cm(na2, nb2, rng);
      const CovarianceMatrix sum = direct_sum(s1, s2);
      for (Direction d : {Direction::AtoB, Direction::BtoA}) {
        const double lhs = steering_measure(sum, d, cfg.tol);
        const double rhs = steering_measure(s1, d, cfg.tol) + steering_measure(s2, d, cfg.tol);
        note_violation(r, abs_diff(lhs, rhs), 1e-9);
      }
      ++r.trials;
    }
  });
}

SuiteResult local_invariance(const SuiteConfig& cfg) {
  return timed("local_invariance", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 4);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      const CovarianceMatrix sigma = varied_cm(na, nb, rng);
      const Matrix sa = random_symplectic(na, 1.0, rng);
      const Matrix sb = random_symplectic(nb, 1.0, rng);
      const CovarianceMatrix moved = apply_local_symplectic(sigma, sa, sb, cfg.tol);
      for (Direction d : {Direction::AtoB, Direction::BtoA}) {
        note_violation(r, abs_diff(steering_measure(sigma, d, cfg.tol), steering_measure(moved, d, cfg.tol)),
                       1e-9);
      }
      const auto before = symplectic_eigenvalues(sigma.matrix());
      const auto after = symplectic_eigenvalues(moved.matrix());
      for (std::size_t k = 0; k < before.size(); ++k) {
        note_violation(r, abs_diff(before[k], after[k]) / std::max(1.0, before[k]), 1e-9);
      }
      ++r.trials;
    }
  });
}

SuiteResult single_mode_formula(const SuiteConfig& cfg) {
  return timed("single_mode_formula", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 5);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const int n = 1 + static_cast<int>(t % 3);
      const CovarianceMatrix sigma = varied_cm(n, 1, rng);
      const double closed = std::max(0.0, 0.5 * (log_det(sigma.a_block()) - log_det(sigma.matrix())));
      note_violation(r, abs_diff(steering_measure(sigma, Direction::AtoB, cfg.tol), closed), 1e-8);
      ++r.trials;
    }
  });
}

SuiteResult pure_state_hierarchy(const SuiteConfig& cfg) {
  return timed("pure_state_hierarchy", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 6);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const int n = 1 + static_cast<int>(t % 3);
      const CovarianceMatrix sigma = random_cm(n, 1, 1.0, rng);
      const double entropy = renyi2_entropy(sigma.a_block());
      note_violation(r, abs_diff(steering_measure(sigma, Direction::AtoB, cfg.tol), entropy), 1e-8);
      note_violation(r, abs_diff(steering_measure(sigma, Direction::BtoA, cfg.tol), entropy), 1e-8);
      ++r.trials;
    }
  });
}

SuiteResult convexity(const SuiteConfig& cfg) {
  return timed("convexity", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 7);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      const CovarianceMatrix s1 = varied_cm(na, nb, rng);
      const CovarianceMatrix s2 = varied_cm(na, nb, rng);
      for (double lambda : {0.25, 0.5, 0.75}) {
        const CovarianceMatrix mix(lambda * s1.matrix() + (1.0 - lambda) * s2.matrix(), na, nb);
        for (Direction d : {Direction::AtoB, Direction::BtoA}) {
          const double lhs = coherent_information(mix, d);
          const double rhs = lambda * coherent_information(s1, d) + (1.0 - lambda) * coherent_information(s2, d);
          note_violation(r, lhs - rhs, 1e-9);
          const double g_lhs = steering_measure(mix, d, cfg.tol);
          const double g_rhs = lambda * steering_measure(s1, d, cfg.tol) +
                               (1.0 - lambda) * steering_measure(s2, d, cfg.tol);
          if (na == 1 && nb == 1) note_violation(r, g_lhs - g_rhs, 1e-9);
        }
      }
      ++r.trials;
    }
  });
}

SuiteResult two_mode_bounds(const SuiteConfig& cfg) {
  return timed("two_mode_bounds", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 8);
    double max_asym = 0.0;
    for (std::size_t t = 0; t < 10 * cfg.trials; ++t) {
      const BoundsReport b = steering_bounds_check(varied_cm(1, 1, rng), cfg.tol);
      max_asym = std::max(max_asym, b.asymmetry);
      double worst = 0.0;
      for (const auto& c : b.checks) worst = std::max(worst, -c.slack);
      r.worst = std::max(r.worst, worst);
      if (b.defect) ++r.violations;
      ++r.trials;
    }
    r.detail = "max asymmetry " + std::to_string(max_asym);
  });
}

SuiteResult threshold_consistency(const SuiteConfig& cfg) {
  return timed("threshold_consistency", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 9);
    std::size_t skipped = 0;
    for (std::size_t t = 0; t < 10 * cfg.trials; ++t) {
      const CovarianceMatrix sigma = varied_cm(1, 1, rng);
      const PurityProfile p = purity_profile(sigma);
      ++r.trials;
      if (std::abs(p.eta - p.mu_b) < 1e-9 || std::abs(p.eta - p.mu_a) < 1e-9) {
        ++skipped;
        continue;
      }
      const RegionLabel label = classify_two_mode(p, cfg.tol.psd);
      const bool ab = steering_measure(sigma, Direction::AtoB, cfg.tol) > 0.0;
      const bool ba = steering_measure(sigma, Direction::BtoA, cfg.tol) > 0.0;
      if (label.physicality != Physicality::Physical || label.steer_a_to_b != ab || label.steer_b_to_a != ba) {
        ++r.violations;
      }
    }
    r.detail = std::to_string(skipped) + " marginal profiles skipped";
  });
}

SuiteResult key_rate_consistency(const SuiteConfig& cfg) {
  return timed("key_rate_consistency", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 10);
    while (r.trials < cfg.trials) {
      const CovarianceMatrix sigma = to_standard_form(varied_cm(1, 1, rng), cfg.tol).to_cm();
      const double g = steering_measure(sigma, Direction::BtoA, cfg.tol);
      if (!(g > 0.0)) continue;
      const ReidProducts reid = reid_variances(sigma, cfg.tol);
      note_violation(r, abs_diff(key_rate_bound(g).nats, key_rate_from_reid(reid.a)), 1e-8);
      ++r.trials;
    }
  });
}

SuiteResult measurement_ordering(const SuiteConfig& cfg) {
  return timed("measurement_ordering", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 11);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      const CovarianceMatrix sigma = varied_cm(na, nb, rng);
      const MeasurementCM seed(random_single_party_cm(na, 3.0, rng, 1.5));
      const Matrix conditioned = condition_on_measurement(sigma, seed, cfg.tol);
      const Matrix schur = schur_complement(sigma, Party::B, cfg.tol);
      Eigen::SelfAdjointEigenSolver<Matrix> lower(conditioned - schur, Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> upper(sigma.b_block() - conditioned, Eigen::EigenvaluesOnly);
      note_violation(r, -lower.eigenvalues().minCoeff(), 1e-9);
      note_violation(r, -upper.eigenvalues().minCoeff(), 1e-9);
      if (!is_bona_fide(conditioned, cfg.tol.psd)) ++r.violations;
      ++r.trials;
    }
  });
}

SuiteResult bona_fide_equivalence(const SuiteConfig& cfg) {
  return timed("bona_fide_equivalence", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 12);
    std::uniform_real_distribution<double> shrink(0.5, 1.05);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto [na, nb] = kPartitions[t % kPartitions.size()];
      // Rescaling pushes a share of the samples across the physicality boundary.
      const Matrix m = shrink(rng) * varied_cm(na, nb, rng).matrix();
      const auto nu = symplectic_eigenvalues(m);
      const bool by_spectrum = *std::min_element(nu.begin(), nu.end()) >= 1.0 - cfg.tol.psd;
      if (by_spectrum != is_bona_fide(m, cfg.tol.psd)) ++r.violations;
      ++r.trials;
    }
  });
}

SuiteResult eigen_crosscheck(const SuiteConfig& cfg) {
  return timed("eigen_crosscheck", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 13);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const int modes = 1 + static_cast<int>(t % 4);
      const Matrix m = random_single_party_cm(modes, 10.0, rng, 1.5);
      const auto fast = symplectic_eigenvalues(m);
      const auto dense = dense_eigen_crosscheck(m);
      for (std::size_t k = 0; k < fast.size(); ++k) {
        note_violation(r, abs_diff(fast[k], dense[k]) / std::max(1.0, dense[k]), 1e-8);
      }
      ++r.trials;
    }
  });
}

SuiteResult reid_oracle(const SuiteConfig& cfg) {
  return timed("reid_oracle", [&](SuiteResult& r) {
    Rng rng = suite_rng(cfg, 14);
    std::size_t agree = 0;
    for (std::size_t t = 0; t < cfg.oracle_states; ++t) {
      const CovarianceMatrix sigma = to_standard_form(varied_cm(1, 1, rng), cfg.tol).to_cm();
      const SampleBatch batch = sample_gaussian(sigma, static_cast<Eigen::Index>(cfg.samples), rng());
      bool ok = true;
      for (Party p : {Party::A, Party::B}) {
        const ReidEstimate est = empirical_reid_product(batch, p);
        const double exact = std::exp(log_det(schur_complement(sigma, p, cfg.tol)));
        const double z = std::abs(est.product - exact) / est.standard_error;
        r.worst = std::max(r.worst, z);
        ok = ok && z < 3.0;
      }
      if (ok) ++agree;
      ++r.trials;
    }
    // Allow roughly 10% of states outside 3 standard errors by chance.
    const std::size_t needed = r.trials - r.trials / 10;
    if (agree < needed) r.violations = r.trials - agree;
    r.detail = std::to_string(agree) + "/" + std::to_string(r.trials) + " states within 3 standard errors";
  });
}

std::vector<SuiteResult> run_all(const SuiteConfig& cfg) {
  return {
      ppt_implies_nonsteerable(cfg), monotonicity(cfg),       additivity(cfg),
      local_invariance(cfg),         single_mode_formula(cfg), pure_state_hierarchy(cfg),
      convexity(cfg),                two_mode_bounds(cfg),     threshold_consistency(cfg),
      key_rate_consistency(cfg),     measurement_ordering(cfg), bona_fide_equivalence(cfg),
      eigen_crosscheck(cfg),         reid_oracle(cfg),
  };
}

nlohmann::json to_json(const SuiteResult& r) {
  return {{"name", r.name},         {"passed", r.passed}, {"trials", r.trials},
          {"violations", r.violations}, {"worst", r.worst}, {"detail", r.detail},
          {"seconds", r.seconds}};
}

nlohmann::json summary_json(const std::vector<SuiteResult>& results, const SuiteConfig& cfg) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back(to_json(r));
    all = all && r.passed;
  }
  return {{"passed", all},
          {"seed", cfg.seed},
          {"trials", cfg.trials},
          {"samples", cfg.samples},
          {"suites", suites}};
}

}  // namespace gsteer::suites
