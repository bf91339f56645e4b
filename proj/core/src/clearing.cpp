#include "clearnet/clearing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clearnet/error.hpp"

namespace clearnet {

namespace {

void require_length(const FinancialSystem& system, const Vector& v,
                    const char* name) {
  if (v.size() != system.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(name) + " has " + std::to_string(v.size()) +
                    " entries, expected " + std::to_string(system.size()));
  }
}

double liability_scale(const FinancialSystem& system) {
  return std::max(1.0, max_abs_head(system.total_liabilities(), system.bank_count()));
}

bool all_positive(const Vector& v) {
  return v.size() == 0 || v.minCoeff() > 0.0;
}

}  // namespace

Vector apply_clearing_map(const FinancialSystem& system,
                          const ClearingParams& params, const Vector& payments) {
  require_length(system, payments, "payment vector");
  params.validate(system.size());
  const DefaultIndicator defaults = default_indicator(system, payments);
  const Vector& l = system.total_liabilities();
  const Vector& a = system.external_assets();

  Vector mixed = l;
  for (Index i = 0; i < system.size(); ++i)
    if (defaults[i]) mixed[i] = payments[i];
  const Vector incoming = system.claims() * mixed;

  Vector next(system.size());
  for (Index i = 0; i < system.size(); ++i) {
    next[i] = defaults[i] ? params.r[i] * incoming[i] + params.r_a * a[i] : l[i];
  }
  return next;
}

Vector solve_given_defaults(const FinancialSystem& system,
                            const ClearingParams& params,
                            const DefaultIndicator& defaults) {
  if (defaults.size() != system.size()) {
    throw Error(ErrorCode::DimensionMismatch, "default indicator has wrong length");
  }
  params.validate(system.size());
  const Vector& l = system.total_liabilities();
  const Vector& a = system.external_assets();
  const Matrix& c = system.claims();
  const Vector cl = c * l;

  // (I - r D C D)(f - l) = D (r_a a + r C l - l), restricted to defaulted rows.
  const std::vector<Index> block = defaults.defaulted();
  const auto k = static_cast<Index>(block.size());
  Matrix lhs = Matrix::Identity(k, k);
  Vector rhs(k);
  for (Index u = 0; u < k; ++u) {
    const Index i = block[static_cast<std::size_t>(u)];
    const double ri = params.r[i];
    for (Index v = 0; v < k; ++v) {
      lhs(u, v) -= ri * c(i, block[static_cast<std::size_t>(v)]);
    }
    rhs[u] = params.r_a * a[i] + ri * cl[i] - l[i];
  }
  const Vector shortfall = solve_dense(lhs, rhs);

  Vector f = l;
  for (Index u = 0; u < k; ++u) f[block[static_cast<std::size_t>(u)]] += shortfall[u];
  return f;
}

ClearingSolution fictitious_default_sequence(const FinancialSystem& system,
                                             const ClearingParams& params) {
  params.validate(system.size());
  const Vector& l = system.total_liabilities();
  const Index n = system.size();

  ClearingSolution out{.payments = l,
                       .defaults = default_indicator(system, l),
                       .default_history = {},
                       .iterations = 0,
                       .residual = 0.0,
                       .uniqueness_condition_met = all_positive(system.external_assets())};
  out.default_history.push_back(out.defaults);

  for (Index iteration = 1; iteration <= n + 1; ++iteration) {
    const Vector f = solve_given_defaults(system, params, out.defaults);
    const DefaultIndicator next = out.defaults.united(default_indicator(system, f));
    if (next == out.defaults) {
      out.payments = f;
      out.iterations = static_cast<int>(iteration);
      out.residual = max_abs_head(apply_clearing_map(system, params, f) - f,
                                  system.bank_count());
      return out;
    }
    out.defaults = next;
    out.default_history.push_back(next);
  }
  throw Error(ErrorCode::NoConvergence,
              "default set still changing after " + std::to_string(n + 1) +
                  " outer iterations");
}

Vector picard_clearing_oracle(const FinancialSystem& system,
                              const ClearingParams& params,
                              const std::optional<Vector>& start) {
  params.validate(system.size());
  constexpr long kMaxIterations = 1'000'000;
  const double tol = 1e-12 * liability_scale(system);

  Vector p = start ? *start : system.total_liabilities();
  require_length(system, p, "oracle start vector");
  for (long k = 0; k < kMaxIterations; ++k) {
    Vector next = apply_clearing_map(system, params, p);
    const double step = max_abs_head(next - p, system.bank_count());
    p = std::move(next);
    if (step <= tol) return p;
  }
  throw Error(ErrorCode::OracleNoConvergence,
              "Picard iteration did not settle within " +
                  std::to_string(kMaxIterations) + " steps");
}

Vector systemic_loss(const ClearingSolution& solution, const Vector& liabilities) {
  if (liabilities.size() != solution.payments.size()) {
    throw Error(ErrorCode::DimensionMismatch, "liability vector has wrong length");
  }
  Vector sigma = liabilities - solution.payments;
  if (sigma.size() > 0) sigma[sigma.size() - 1] = 0.0;
  return sigma;
}

Vector capitalization_adjusted_loss(const ClearingSolution& solution,
                                    const FinancialSystem& system) {
  const Vector sigma = systemic_loss(solution, system.total_liabilities());
  const Vector s = system.shock();
  const Vector base = system.pre_shock_assets() + system.claims() * system.total_liabilities();
  Vector out = Vector::Zero(system.size());
  for (Index i = 0; i < system.bank_count(); ++i) {
    if (base[i] == 0.0) {
      throw Error(ErrorCode::DivisionByZero,
                  "o_i + (Cl)_i vanishes for bank " + std::to_string(i), i);
    }
    out[i] = sigma[i] * s[i] / base[i];
  }
  return out;
}

}  // namespace clearnet
