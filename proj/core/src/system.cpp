#include "clearnet/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "clearnet/error.hpp"

namespace clearnet {

namespace {

std::string cell(Index i, Index j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Matrix claims_from(const Matrix& liabilities, const Vector& totals) {
  const Index n = liabilities.rows();
  Matrix c = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    if (totals[j] > 0.0) c.col(j) = liabilities.row(j).transpose() / totals[j];
  }
  return c;
}

void require_finite_nonnegative(const Vector& v, std::string_view name) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::NonFiniteEntry,
                  std::string(name) + "[" + std::to_string(i) + "] is not finite",
                  i);
    }
    if (v[i] < 0.0) {
      throw Error(ErrorCode::NegativeEntry,
                  std::string(name) + "[" + std::to_string(i) +
                      "] = " + std::to_string(v[i]) + " is negative",
                  i);
    }
  }
}

}  // namespace

// --- DefaultIndicator -------------------------------------------------------

DefaultIndicator::DefaultIndicator(std::vector<bool> flags)
    : flags_(std::move(flags)) {
  if (!flags_.empty()) flags_.back() = true;
}

DefaultIndicator DefaultIndicator::sink_only(Index node_count) {
  return DefaultIndicator(std::vector<bool>(static_cast<std::size_t>(node_count), false));
}

DefaultIndicator DefaultIndicator::everyone(Index node_count) {
  return DefaultIndicator(std::vector<bool>(static_cast<std::size_t>(node_count), true));
}

Index DefaultIndicator::count() const {
  Index n = 0;
  for (bool f : flags_) n += f ? 1 : 0;
  return n;
}

bool DefaultIndicator::all_defaulted() const { return count() == size(); }

std::vector<Index> DefaultIndicator::defaulted() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if ((*this)[i]) out.push_back(i);
  return out;
}

std::vector<Index> DefaultIndicator::solvent() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (!(*this)[i]) out.push_back(i);
  return out;
}

Vector DefaultIndicator::diagonal() const {
  Vector d(size());
  for (Index i = 0; i < size(); ++i) d[i] = (*this)[i] ? 1.0 : 0.0;
  return d;
}

bool DefaultIndicator::includes(const DefaultIndicator& other) const {
  if (other.size() != size()) return false;
  for (Index i = 0; i < size(); ++i)
    if (other[i] && !(*this)[i]) return false;
  return true;
}

DefaultIndicator DefaultIndicator::united(const DefaultIndicator& other) const {
  if (other.size() != size()) {
    throw Error(ErrorCode::DimensionMismatch, "default indicators differ in size");
  }
  std::vector<bool> merged(flags_.size());
  for (std::size_t i = 0; i < merged.size(); ++i)
    merged[i] = flags_[i] || other.flags_[i];
  return DefaultIndicator(std::move(merged));
}

// --- FinancialSystem --------------------------------------------------------

FinancialSystem build_system(Matrix liabilities, Vector pre_shock_assets,
                             std::optional<Vector> external_assets) {
  const Index n = liabilities.rows();
  if (n == 0 || liabilities.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "liability matrix must be square and non-empty, got " +
                    std::to_string(liabilities.rows()) + "x" +
                    std::to_string(liabilities.cols()));
  }
  if (pre_shock_assets.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "pre_shock_assets has " + std::to_string(pre_shock_assets.size()) +
                    " entries, expected " + std::to_string(n));
  }
  if (external_assets && external_assets->size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "external_assets has " + std::to_string(external_assets->size()) +
                    " entries, expected " + std::to_string(n));
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double v = liabilities(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteEntry,
                    "liability " + cell(i, j) + " is not finite", i);
      }
      if (v < 0.0) {
        throw Error(ErrorCode::NegativeEntry,
                    "liability " + cell(i, j) + " = " + std::to_string(v) +
                        " is negative",
                    i);
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (liabilities(i, i) != 0.0) {
      throw Error(ErrorCode::NonzeroDiagonal,
                  "node " + std::to_string(i) + " owes itself " +
                      std::to_string(liabilities(i, i)),
                  i);
    }
  }
  const Index sink = n - 1;
  for (Index j = 0; j < n; ++j) {
    if (liabilities(sink, j) != 0.0) {
      throw Error(ErrorCode::NonzeroSinkRow,
                  "sink owes node " + std::to_string(j) + " " +
                      std::to_string(liabilities(sink, j)),
                  sink);
    }
  }

  require_finite_nonnegative(pre_shock_assets, "pre_shock_assets");
  if (!(pre_shock_assets[sink] > 0.0)) {
    throw Error(ErrorCode::NonpositiveSinkAssets,
                "sink pre-shock assets must be positive", sink);
  }
  if (external_assets) require_finite_nonnegative(*external_assets, "external_assets");

  FinancialSystem s;
  s.total_liabilities_ = liabilities.rowwise().sum();
  s.claims_ = claims_from(liabilities, s.total_liabilities_);
  s.liabilities_ = std::move(liabilities);
  s.external_assets_ = external_assets ? std::move(*external_assets) : pre_shock_assets;
  s.pre_shock_assets_ = std::move(pre_shock_assets);
  return s;
}

FinancialSystem build_system_with_sink(const Matrix& bank_liabilities,
                                       const Vector& external_liabilities,
                                       const Vector& bank_pre_shock_assets,
                                       double sink_assets,
                                       const std::optional<Vector>& bank_external_assets) {
  const Index banks = bank_liabilities.rows();
  if (bank_liabilities.cols() != banks || external_liabilities.size() != banks ||
      bank_pre_shock_assets.size() != banks ||
      (bank_external_assets && bank_external_assets->size() != banks)) {
    throw Error(ErrorCode::DimensionMismatch,
                "bank block, external liabilities and asset vectors must agree on " +
                    std::to_string(banks) + " banks");
  }
  Matrix full = Matrix::Zero(banks + 1, banks + 1);
  full.topLeftCorner(banks, banks) = bank_liabilities;
  full.col(banks).head(banks) = external_liabilities;

  Vector o(banks + 1);
  o << bank_pre_shock_assets, sink_assets;
  std::optional<Vector> a;
  if (bank_external_assets) {
    a = Vector(banks + 1);
    *a << *bank_external_assets, sink_assets;
  }
  return build_system(std::move(full), std::move(o), std::move(a));
}

FinancialSystem FinancialSystem::with_external_assets(const Vector& assets) const {
  return build_system(liabilities_, pre_shock_assets_, assets);
}

FinancialSystem FinancialSystem::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidParameter, "scale factor must be positive and finite");
  }
  return build_system(liabilities_ * factor, pre_shock_assets_ * factor,
                      Vector(external_assets_ * factor));
}

void ClearingParams::validate(Index node_count) const {
  r.require_closed_unit(node_count, "r");
  if (!(r_a >= 0.0 && r_a <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "r_a must lie in [0,1], got " + std::to_string(r_a));
  }
}

// --- derived quantities -----------------------------------------------------

Vector total_liabilities(const FinancialSystem& system) {
  return system.total_liabilities();
}

RelativeClaims relative_claims(const FinancialSystem& system) {
  return RelativeClaims{system.claims()};
}

Vector equity(const FinancialSystem& system, const Vector& payments) {
  if (payments.size() != system.size()) {
    throw Error(ErrorCode::DimensionMismatch, "payment vector has wrong length");
  }
  return system.external_assets() + system.claims() * payments -
         system.total_liabilities();
}

DefaultIndicator default_indicator(const FinancialSystem& system,
                                   const Vector& payments) {
  const Vector e = equity(system, payments);
  const Vector& l = system.total_liabilities();
  std::vector<bool> flags(static_cast<std::size_t>(system.size()));
  for (Index i = 0; i < system.size(); ++i) {
    flags[static_cast<std::size_t>(i)] = e[i] < -kDefaultBand * std::max(1.0, l[i]);
  }
  return DefaultIndicator(std::move(flags));
}

DefaultIndicator fundamental_defaults(const FinancialSystem& system) {
  return default_indicator(system, system.total_liabilities());
}

}  // namespace clearnet
