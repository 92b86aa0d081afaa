#pragma once

#include <cstdint>
#include <random>

#include "gsteer/covariance_matrix.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {

/// All random constructions draw from an explicitly passed generator.
using Rng = std::mt19937_64;

inline constexpr double kDefaultMaxSqueeze = 2.0;
inline constexpr double kDefaultTemperatureScale = 5.0;

/// Haar-random passive (orthogonal and symplectic) transformation on n modes.
Matrix random_orthogonal_symplectic(int n_modes, Rng& rng);

/// Bloch-Messiah product O1 * diag(e^r, e^-r, ...) * O2 with every squeezing
/// parameter r drawn uniformly from [0, max_squeeze].
Matrix random_symplectic(int n_modes, double max_squeeze, Rng& rng);

/// S D S^T on n modes, D = diag(nu_1, nu_1, ...) with nu_j uniform in
/// [1, temperature_scale]. Always bona fide.
Matrix random_single_party_cm(int n_modes, double temperature_scale, Rng& rng,
                              double max_squeeze = kDefaultMaxSqueeze);

CovarianceMatrix random_cm(int n_modes_a, int n_modes_b, double temperature_scale, Rng& rng,
                           double max_squeeze = kDefaultMaxSqueeze);

/// Seeded overload; the same seed always yields the same matrix.
CovarianceMatrix random_cm(int n_modes_a, int n_modes_b, double temperature_scale,
                           std::uint64_t seed, double max_squeeze = kDefaultMaxSqueeze);

/// Random channel on `system_modes` modes dilated with `ancilla_modes`
/// thermal-squeezed ancillas.
GaussianChannelDilation random_channel(int system_modes, int ancilla_modes, Rng& rng,
                                       double temperature_scale = kDefaultTemperatureScale,
                                       double max_squeeze = 1.0);

}  // namespace gsteer
