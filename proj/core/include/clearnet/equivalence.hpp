#ifndef CLEARNET_EQUIVALENCE_HPP
#define CLEARNET_EQUIVALENCE_HPP

#include <optional>

#include "clearnet/clearing.hpp"
#include "clearnet/linalg.hpp"
#include "clearnet/shocks.hpp"
#include "clearnet/system.hpp"

namespace clearnet {

/// Side-by-side comparison of clearing losses l - p with the centrality
/// sigma = (I - rC)^{-1} beta under a system-wide shock.
struct EquivalenceReport {
  ShockKind kind = ShockKind::FullDefault;
  double tolerance = 0.0;
  /// Max-norm over banks of the gap that gates `passed`: sigma_clearing -
  /// sigma_katz for FullDefault, p - q for Relaxed.
  double max_abs_gap = 0.0;
  bool one_step = false;
  bool all_defaulted = false;
  /// Per-node gap (sink entry 0).
  Vector details;
  Vector sigma_clearing;
  Vector sigma_katz;
  /// Relaxed only: gap against the alternative closed form. Informational.
  std::optional<double> printed_form_gap;
  std::optional<Vector> printed_form_details;
  int iterations = 0;

  bool passed() const;
};

/// Full-default shock, clearing, and the centrality side by side. Passes
/// when the gap is within `tol`, the fictitious default sequence stopped
/// after one outer iteration and every node defaulted.
EquivalenceReport verify_full_shock_equivalence(const FinancialSystem& system,
                                                const ClearingParams& params,
                                                const Rate& m, double tol);

/// Relaxed interpolated shock; gates on the candidate gap only and records
/// the alternative closed-form gap separately.
EquivalenceReport verify_relaxed_equivalence(const FinancialSystem& system,
                                             const ClearingParams& params,
                                             const Rate& m, double tol);

struct KatzReductionReport {
  bool passed = false;
  double max_abs_gap = 0.0;
  /// Normalized loss centrality and the textbook Katz vector, banks only.
  Vector normalized_sigma;
  Vector katz;
};

/// With every bank owing exactly one creditor and r = m, the loss
/// centrality with beta rescaled to all-ones equals textbook Katz on the
/// bank block of C with alpha = r. Throws NotSingleCreditor otherwise.
KatzReductionReport verify_katz_reduction(const FinancialSystem& system, double r,
                                          double tol);

}  // namespace clearnet

#endif  // CLEARNET_EQUIVALENCE_HPP
