#ifndef CLEARNET_SYSTEM_HPP
#define CLEARNET_SYSTEM_HPP

#include <optional>
#include <vector>

#include "clearnet/linalg.hpp"

namespace clearnet {

// Relative tolerance band for the strict solvency test: node i defaults when
// its equity is below -kDefaultBand * max(1, l_i). Equality is solvent.
inline constexpr double kDefaultBand = 1e-12;

/// Diagonal 0/1 default matrix, stored as flags. The sink (last node) is
/// always flagged.
class DefaultIndicator {
 public:
  DefaultIndicator() = default;
  /// Forces the last flag to true.
  explicit DefaultIndicator(std::vector<bool> flags);

  static DefaultIndicator sink_only(Index node_count);
  static DefaultIndicator everyone(Index node_count);

  Index size() const { return static_cast<Index>(flags_.size()); }
  bool operator[](Index i) const { return flags_[static_cast<std::size_t>(i)]; }
  const std::vector<bool>& flags() const { return flags_; }

  Index count() const;
  bool all_defaulted() const;
  std::vector<Index> defaulted() const;
  std::vector<Index> solvent() const;

  /// The diagonal of D as a 0/1 vector.
  Vector diagonal() const;

  /// True when every node defaulted in `other` is defaulted here as well.
  bool includes(const DefaultIndicator& other) const;
  DefaultIndicator united(const DefaultIndicator& other) const;

  friend bool operator==(const DefaultIndicator&,
                         const DefaultIndicator&) = default;

 private:
  std::vector<bool> flags_;
};

/// Column-normalized claims: C(i, j) = L(j, i) / l_j, or 0 when l_j = 0.
struct RelativeClaims {
  Matrix matrix;
};

/// An obligation network of banks plus one sink node, stored last.
///
/// Immutable after construction. Total liabilities l and the relative
/// claims matrix C are derived once when the system is built.
class FinancialSystem {
 public:
  Index size() const { return liabilities_.rows(); }
  Index sink() const { return size() - 1; }
  Index bank_count() const { return size() - 1; }

  const Matrix& liabilities() const { return liabilities_; }
  const Vector& external_assets() const { return external_assets_; }
  const Vector& pre_shock_assets() const { return pre_shock_assets_; }
  const Vector& total_liabilities() const { return total_liabilities_; }
  const Matrix& claims() const { return claims_; }

  /// s = a - o.
  Vector shock() const { return external_assets_ - pre_shock_assets_; }

  /// Same network and pre-shock assets with a new external asset vector.
  FinancialSystem with_external_assets(const Vector& assets) const;

  /// Every currency quantity multiplied by `factor` (> 0).
  FinancialSystem scaled(double factor) const;

 private:
  friend FinancialSystem build_system(Matrix, Vector, std::optional<Vector>);

  FinancialSystem() = default;

  Matrix liabilities_;
  Vector external_assets_;
  Vector pre_shock_assets_;
  Vector total_liabilities_;
  Matrix claims_;
};

/// Recovery rates for interbank claims (r) and external assets (r_a).
struct ClearingParams {
  Rate r = 1.0;
  double r_a = 1.0;

  /// Throws InvalidParameter when a rate leaves [0, 1] or a per-node r has
  /// the wrong length.
  void validate(Index node_count) const;
};

/// Validates and builds a system whose matrix already contains the sink as
/// its last row and column. `external_assets` defaults to
/// `pre_shock_assets`.
///
/// Errors name the offending index: DimensionMismatch, NonFiniteEntry,
/// NegativeEntry, NonzeroDiagonal, NonzeroSinkRow, NonpositiveSinkAssets.
FinancialSystem build_system(Matrix liabilities, Vector pre_shock_assets,
                             std::optional<Vector> external_assets = std::nullopt);

/// Builds a system from the bank block only, appending a sink that receives
/// `external_liabilities` (one entry per bank) and holds `sink_assets`.
FinancialSystem build_system_with_sink(
    const Matrix& bank_liabilities, const Vector& external_liabilities,
    const Vector& bank_pre_shock_assets, double sink_assets = 1.0,
    const std::optional<Vector>& bank_external_assets = std::nullopt);

/// l_i = sum_j L(i, j).
Vector total_liabilities(const FinancialSystem& system);

RelativeClaims relative_claims(const FinancialSystem& system);

/// Balance-sheet equity a + C * payments - l.
Vector equity(const FinancialSystem& system, const Vector& payments);

/// D(x): flags node i when a_i + (C x)_i < l_i (outside the tolerance band),
/// and always flags the sink.
DefaultIndicator default_indicator(const FinancialSystem& system,
                                   const Vector& payments);

/// Banks insolvent even if every counterparty pays in full: D(l).
DefaultIndicator fundamental_defaults(const FinancialSystem& system);

}  // namespace clearnet

#endif  // CLEARNET_SYSTEM_HPP
