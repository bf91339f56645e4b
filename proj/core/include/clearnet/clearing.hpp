#ifndef CLEARNET_CLEARING_HPP
#define CLEARNET_CLEARING_HPP

#include <optional>
#include <vector>

#include "clearnet/linalg.hpp"
#include "clearnet/system.hpp"

namespace clearnet {

// Fixed-point residual tolerance, scaled by max(1, max_i l_i).
inline constexpr double kFixedPointTolerance = 1e-10;

struct ClearingSolution {
  /// Clearing vector p. The sink entry is computed but has no meaning.
  Vector payments;
  DefaultIndicator defaults;
  /// Default set entering each outer iteration, starting with D(l).
  std::vector<DefaultIndicator> default_history;
  int iterations = 0;
  /// Max-norm of f(p) - p over banks.
  double residual = 0.0;
  /// a_i > 0 for every node, the sufficient condition for uniqueness.
  bool uniqueness_condition_met = false;
};

/// One application of the clearing map. Solvent banks pay l_i; defaulted
/// banks pay r_i * (C m)_i + r_a * a_i where m mixes `payments` (for
/// defaulted counterparties) with l (for solvent ones). Defaults are judged
/// on `payments`.
Vector apply_clearing_map(const FinancialSystem& system,
                          const ClearingParams& params, const Vector& payments);

/// Fixed point of the clearing map with the default set frozen. Only the
/// block of defaulted nodes enters the linear solve; solvent entries are l.
Vector solve_given_defaults(const FinancialSystem& system,
                            const ClearingParams& params,
                            const DefaultIndicator& defaults);

/// Fictitious default sequence from f_0 = l: re-solve with the current
/// default set, add newly insolvent banks, stop when the set is stable.
/// Terminates in at most N outer iterations; throws NoConvergence otherwise.
ClearingSolution fictitious_default_sequence(const FinancialSystem& system,
                                             const ClearingParams& params);

/// Brute-force verification oracle: repeated application of the clearing
/// map from `start` (default l) until the step is below
/// 1e-12 * max(1, max l) or 10^6 iterations (OracleNoConvergence).
Vector picard_clearing_oracle(const FinancialSystem& system,
                              const ClearingParams& params,
                              const std::optional<Vector>& start = std::nullopt);

/// sigma = l - p on banks; the sink entry is 0.
Vector systemic_loss(const ClearingSolution& solution, const Vector& liabilities);

/// sigma_i * s_i / (o_i + (C l)_i) on banks with s = a - o taken from
/// `system`; the sink entry is 0. Throws DivisionByZero when a denominator
/// vanishes.
Vector capitalization_adjusted_loss(const ClearingSolution& solution,
                                    const FinancialSystem& system);

}  // namespace clearnet

#endif  // CLEARNET_CLEARING_HPP
