#include "clearnet/shocks.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "clearnet/centrality.hpp"
#include "clearnet/error.hpp"

namespace clearnet {

namespace {

// l_i - (C l)_i per bank; throws unless every bank has a positive margin.
Vector default_margin(const FinancialSystem& system) {
  const Vector& l = system.total_liabilities();
  const Vector margin = l - system.claims() * l;
  for (Index i = 0; i < system.bank_count(); ++i) {
    if (!(margin[i] > 0.0)) {
      throw Error(ErrorCode::PreconditionViolated,
                  "bank " + std::to_string(i) +
                      " has (Cl)_i >= l_i and cannot be put in fundamental default",
                  i);
    }
  }
  return margin;
}

bool banks_positive(const Vector& a, Index banks) {
  for (Index i = 0; i < banks; ++i)
    if (!(a[i] > 0.0)) return false;
  return true;
}

}  // namespace

FinancialSystem ShockScenario::apply_to(const FinancialSystem& system) const {
  return system.with_external_assets(post_shock_assets);
}

ShockScenario full_default_shock(const FinancialSystem& system, const Rate& m) {
  const Index banks = system.bank_count();
  m.require_open_unit(banks, "m");
  const Vector margin = default_margin(system);
  const Vector& o = system.pre_shock_assets();

  Vector s = Vector::Zero(system.size());
  for (Index i = 0; i < banks; ++i) {
    s[i] = m[i] * margin[i] - o[i];
    if (!(s[i] > -o[i] && s[i] < -o[i] + margin[i])) {
      throw Error(ErrorCode::PreconditionViolated,
                  "shock for bank " + std::to_string(i) +
                      " falls outside the full-default interval",
                  i);
    }
  }
  return ShockScenario{.shock = s,
                       .interpolation = m,
                       .kind = ShockKind::FullDefault,
                       .post_shock_assets = o + s,
                       .search_steps = std::nullopt,
                       .max_steps = std::nullopt};
}

ShockScenario relaxed_shock_search(const FinancialSystem& system,
                                   const ClearingParams& params, int max_steps,
                                   SearchStrategy strategy) {
  if (max_steps < 1) {
    throw Error(ErrorCode::InvalidParameter, "max_steps must be at least 1");
  }
  params.validate(system.size());
  const Index banks = system.bank_count();
  const Vector margin = default_margin(system);
  const Vector& o = system.pre_shock_assets();

  auto shock_at = [&](int k) {
    const double step = static_cast<double>(k) / static_cast<double>(max_steps);
    Vector s = Vector::Zero(system.size());
    for (Index i = 0; i < banks; ++i) s[i] = (-o[i] + margin[i]) - step * margin[i];
    return s;
  };

  struct Outcome {
    bool admissible = false;
    bool all_defaulted = false;
    std::vector<Index> solvent;
  };
  auto evaluate = [&](int k) {
    Outcome out;
    const Vector a = o + shock_at(k);
    out.admissible = banks_positive(a, banks);
    if (!out.admissible) return out;
    const ClearingSolution sol =
        fictitious_default_sequence(system.with_external_assets(a), params);
    out.all_defaulted = sol.defaults.all_defaulted();
    out.solvent = sol.defaults.solvent();
    return out;
  };

  // Admissible steps form a prefix of 1..max_steps since a_i(k) decreases in k.
  int last_admissible = 0;
  for (int k = 1; k <= max_steps; ++k) {
    if (!banks_positive(o + shock_at(k), banks)) break;
    last_admissible = k;
  }

  std::optional<int> found;
  std::vector<Index> solvent_at_last;
  if (last_admissible > 0) {
    if (strategy == SearchStrategy::LinearScan) {
      for (int k = 1; k <= last_admissible && !found; ++k) {
        Outcome out = evaluate(k);
        if (out.all_defaulted) found = k;
        else solvent_at_last = std::move(out.solvent);
      }
    } else {
      Outcome top = evaluate(last_admissible);
      if (top.all_defaulted) {
        int lo = 1;
        int hi = last_admissible;
        while (lo < hi) {
          const int mid = lo + (hi - lo) / 2;
          if (evaluate(mid).all_defaulted) hi = mid;
          else lo = mid + 1;
        }
        found = lo;
      } else {
        solvent_at_last = std::move(top.solvent);
      }
    }
  }

  if (!found) {
    std::vector<std::ptrdiff_t> diag(solvent_at_last.begin(), solvent_at_last.end());
    throw SearchExhausted(
        last_admissible == 0
            ? "no step up to max_steps keeps every bank's external assets positive"
            : "no admissible step up to max_steps pushes every node into default",
        max_steps, last_admissible, std::move(diag));
  }

  const Vector s = shock_at(*found);
  return ShockScenario{.shock = s,
                       // a = (1 - k/max_steps)(l - Cl), the full-default form
                       .interpolation = 1.0 - static_cast<double>(*found) / max_steps,
                       .kind = ShockKind::Relaxed,
                       .post_shock_assets = o + s,
                       .search_steps = *found,
                       .max_steps = max_steps};
}

RelaxedShockCertificate build_relaxed_certificate(const FinancialSystem& system,
                                                  const ClearingParams& params,
                                                  const Rate& m) {
  const Index n = system.size();
  const Index banks = system.bank_count();
  params.validate(n);
  m.require_open_unit(banks, "m");

  const Vector& l = system.total_liabilities();
  const Matrix& c = system.claims();
  const Vector& o = system.pre_shock_assets();
  const Vector rv = params.r.expand(n);
  const Vector mv = m.expand(n);

  // p = r C p + r_a a with a = m (l - C p)  =>  (I - (r - r_a m) C) p = r_a m l
  const Vector coupling = rv - params.r_a * mv;
  const Matrix op = Matrix::Identity(n, n) - coupling.asDiagonal() * c;
  const Vector q = solve_dense(op, params.r_a * mv.cwiseProduct(l));

  Vector a = o;
  const Vector cq = c * q;
  for (Index i = 0; i < banks; ++i) {
    a[i] = mv[i] * (l[i] - cq[i]);
    if (!(a[i] > 0.0)) {
      throw Error(ErrorCode::PreconditionViolated,
                  "relaxed shock leaves bank " + std::to_string(i) +
                      " without positive external assets",
                  i);
    }
  }

  RelaxedShockCertificate cert;
  cert.scenario = ShockScenario{.shock = a - o,
                                .interpolation = m,
                                .kind = ShockKind::Relaxed,
                                .post_shock_assets = a,
                                .search_steps = std::nullopt,
                                .max_steps = std::nullopt};
  cert.candidate = q;
  cert.printed_closed_form = printed_relaxed_closed_form(system, params.r, m);
  cert.clearing = fictitious_default_sequence(system.with_external_assets(a), params);
  cert.candidate_gap = max_abs_head(cert.clearing.payments - q, banks);
  cert.printed_form_gap =
      max_abs_head(cert.clearing.payments - cert.printed_closed_form, banks);
  return cert;
}

RelaxedShockCertificate relaxed_interpolated_shock(const FinancialSystem& system,
                                                   const ClearingParams& params,
                                                   const Rate& m, double tol) {
  RelaxedShockCertificate cert = build_relaxed_certificate(system, params, m);
  const Vector& l = system.total_liabilities();
  const Index banks = system.bank_count();
  if (!cert.clearing.defaults.all_defaulted()) {
    const auto solvent = cert.clearing.defaults.solvent();
    throw Error(ErrorCode::NotAllDefaulted,
                std::to_string(solvent.size()) +
                    " bank(s) stay solvent under the relaxed shock",
                solvent.front());
  }
  const double bound = tol * std::max(1.0, max_abs_head(l, banks));
  if (cert.candidate_gap > bound) {
    throw Error(ErrorCode::SelfConsistencyFailed,
                "clearing vector differs from the candidate by " +
                    std::to_string(cert.candidate_gap));
  }
  return cert;
}

}  // namespace clearnet
