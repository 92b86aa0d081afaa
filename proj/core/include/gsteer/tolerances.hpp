#pragma once

namespace gsteer {

/// Numerical thresholds shared by the whole library.
///
/// The defaults leave double-precision headroom for matrices with norm up to
/// about 1e8, which the extremal two-mode family needs. Every operation that
/// decides a matrix inequality takes one of these values as an argument so a
/// caller can override it per call.
struct Tolerances {
  double symmetry = 1e-10;    ///< max |M - M^T| entry accepted as symmetric
  double psd = 1e-9;          ///< eigenvalue / symplectic-eigenvalue threshold
  double symplectic = 1e-9;   ///< max |S Omega S^T - Omega| entry
  double pairing = 1e-8;      ///< allowed mismatch inside a +-i nu eigenvalue pair
  double max_condition = 1e12;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace gsteer
