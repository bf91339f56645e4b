#ifndef CLEARNET_SPECTRAL_HPP
#define CLEARNET_SPECTRAL_HPP

#include "clearnet/linalg.hpp"
#include "clearnet/system.hpp"

namespace clearnet {

// Margin in the strict test r * rho(C) < 1 - kInvertibilityMargin.
inline constexpr double kInvertibilityMargin = 1e-12;

struct RecoveryInterval {
  double lower = 0.0;
  double upper = 1.0;
  bool upper_closed = false;
};

struct SpectralReport {
  double radius_estimate = 0.0;
  double collatz_wielandt_lower = 0.0;
  /// Admissible recovery rates for which I - rC is invertible by the
  /// sink argument: [0,1] with a sink, [0,1) without.
  RecoveryInterval invertible_for_r;
};

/// g(x, C) = min over {i : x_i != 0} of (x^T C)_i / x_i. A lower bound on
/// rho(C) for any nonnegative, nonzero x. Throws ZeroVector when x = 0 and
/// InvalidParameter when x has a negative entry.
double collatz_wielandt_value(const Matrix& c, const Vector& x);

/// Perron root of a nonnegative matrix.
///
/// C is split into strongly connected components; the radius is the largest
/// radius among the irreducible diagonal blocks. Each block B of size > 1 is
/// handled by power iteration on B + I, which is primitive, so the Perron
/// root is simple and strictly dominant even for periodic B. The start
/// vector is all-ones plus a 1e-9 ramp. Iteration stops once the
/// Collatz-Wielandt bracket min_i ((B+I)x)_i / x_i <= rho + 1 <=
/// max_i ((B+I)x)_i / x_i is narrower than `tol` (or has reached rounding
/// level); the midpoint is returned.
/// Throws PowerIterationStall past `max_iter` (counted per block).
double spectral_radius(const Matrix& c, double tol = 1e-10,
                       long max_iter = 1'000'000);

struct InvertibilityCheck {
  bool invertible = false;
  SpectralReport report;
};

/// True iff r * rho(C) < 1 - kInvertibilityMargin.
InvertibilityCheck check_invertibility(const Matrix& c, double r, bool has_sink);

struct RadiusComparison {
  bool holds = false;
  double masked_radius = 0.0;  // rho(D C D)
  double full_radius = 0.0;    // rho(C)
};

/// Compares rho(D C D) against rho(C) with slack 1e-10.
RadiusComparison corollary_radius_bound(const Matrix& c,
                                        const DefaultIndicator& defaults);

}  // namespace clearnet

#endif  // CLEARNET_SPECTRAL_HPP
