#ifndef CLEARNET_SHOCKS_HPP
#define CLEARNET_SHOCKS_HPP

#include <optional>

#include "clearnet/clearing.hpp"
#include "clearnet/linalg.hpp"
#include "clearnet/system.hpp"

namespace clearnet {

enum class ShockKind { FullDefault, Relaxed };

struct ShockScenario {
  /// s, with s = 0 on the sink.
  Vector shock;
  Rate interpolation = 0.5;
  ShockKind kind = ShockKind::FullDefault;
  /// a = o + s.
  Vector post_shock_assets;
  /// Step k accepted by the relaxed search, and the MaxSteps it ran with.
  std::optional<int> search_steps;
  std::optional<int> max_steps;

  /// The input system with external assets replaced by the shocked ones.
  FinancialSystem apply_to(const FinancialSystem& system) const;
};

/// Shock that puts every bank in fundamental default while keeping assets
/// positive: s_i = m l_i - m (C l)_i - o_i, i.e. a_i = m (l_i - (C l)_i).
///
/// Requires (C l)_i < l_i for every bank (PreconditionViolated) and m in
/// (0,1) (InvalidInterpolation).
ShockScenario full_default_shock(const FinancialSystem& system, const Rate& m);

enum class SearchStrategy { LinearScan, Bisection };

/// Step search for the smallest shock on the schedule
///
///   s_i(k) = (-o_i + l_i - (C l)_i) - (k / max_steps) (l_i - (C l)_i)
///
/// that leaves every node defaulted after clearing. Steps whose shock would
/// drive some a_i to zero or below are inadmissible. Bisection relies on the
/// default set being monotone in k and returns the same step as the scan.
///
/// Throws SearchExhausted when no admissible k <= max_steps succeeds.
ShockScenario relaxed_shock_search(const FinancialSystem& system,
                                   const ClearingParams& params, int max_steps,
                                   SearchStrategy strategy = SearchStrategy::LinearScan);

/// A relaxed interpolated shock together with the evidence that certifies it.
struct RelaxedShockCertificate {
  ShockScenario scenario;
  /// q, the payment vector consistent with a = m (l - C q).
  Vector candidate;
  /// The alternative closed form (I - (r-m)C)^{-1} m (l + rCl), kept for
  /// comparison only.
  Vector printed_closed_form;
  ClearingSolution clearing;
  /// Max-norm over banks of p - q and of p - printed form.
  double candidate_gap = 0.0;
  double printed_form_gap = 0.0;
};

/// Builds the relaxed interpolated shock and runs the clearing solver on it
/// without judging the outcome.
RelaxedShockCertificate build_relaxed_certificate(const FinancialSystem& system,
                                                  const ClearingParams& params,
                                                  const Rate& m);

/// Resolves the self-referential shock s_i = m l_i - m (C p)_i - o_i.
///
/// q solves (I - (r - r_a m) C) q = r_a m l, then a = m (l - C q) on banks.
/// The full clearing solver must reproduce q within
/// tol * max(1, max l) (SelfConsistencyFailed) with every node in default
/// (NotAllDefaulted).
RelaxedShockCertificate relaxed_interpolated_shock(const FinancialSystem& system,
                                                   const ClearingParams& params,
                                                   const Rate& m, double tol = 1e-8);

}  // namespace clearnet

#endif  // CLEARNET_SHOCKS_HPP
