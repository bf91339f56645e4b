#include "clearnet/equivalence.hpp"

#include <algorithm>
#include <string>

#include "clearnet/centrality.hpp"
#include "clearnet/error.hpp"

namespace clearnet {

bool EquivalenceReport::passed() const {
  const bool gap_ok = max_abs_gap <= tolerance;
  if (kind == ShockKind::FullDefault) return gap_ok && one_step && all_defaulted;
  return gap_ok && all_defaulted;
}

EquivalenceReport verify_full_shock_equivalence(const FinancialSystem& system,
                                                const ClearingParams& params,
                                                const Rate& m, double tol) {
  params.validate(system.size());
  const Index banks = system.bank_count();
  const ShockScenario scenario = full_default_shock(system, m);
  const FinancialSystem shocked = scenario.apply_to(system);
  const ClearingSolution solution = fictitious_default_sequence(shocked, params);

  EquivalenceReport report;
  report.kind = ShockKind::FullDefault;
  report.tolerance = tol;
  report.sigma_clearing = systemic_loss(solution, shocked.total_liabilities());
  // The network is unchanged by the shock, so beta and C come from either.
  report.sigma_katz = loss_centrality(system, params.r, m).sigma;
  report.details = report.sigma_clearing - report.sigma_katz;
  report.details[system.sink()] = 0.0;
  report.max_abs_gap = max_abs_head(report.details, banks);
  report.iterations = solution.iterations;
  report.one_step = solution.iterations == 1;
  report.all_defaulted = solution.defaults.all_defaulted();
  return report;
}

EquivalenceReport verify_relaxed_equivalence(const FinancialSystem& system,
                                             const ClearingParams& params,
                                             const Rate& m, double tol) {
  const Index banks = system.bank_count();
  const RelaxedShockCertificate cert = build_relaxed_certificate(system, params, m);
  const Vector& l = system.total_liabilities();

  EquivalenceReport report;
  report.kind = ShockKind::Relaxed;
  report.tolerance = tol;
  report.sigma_clearing = systemic_loss(cert.clearing, l);
  report.sigma_katz = l - cert.candidate;
  report.sigma_katz[system.sink()] = 0.0;
  report.details = cert.clearing.payments - cert.candidate;
  report.details[system.sink()] = 0.0;
  report.max_abs_gap = max_abs_head(report.details, banks);
  Vector printed = cert.clearing.payments - cert.printed_closed_form;
  printed[system.sink()] = 0.0;
  report.printed_form_gap = max_abs_head(printed, banks);
  report.printed_form_details = std::move(printed);
  report.iterations = cert.clearing.iterations;
  report.one_step = cert.clearing.iterations == 1;
  report.all_defaulted = cert.clearing.defaults.all_defaulted();
  return report;
}

KatzReductionReport verify_katz_reduction(const FinancialSystem& system, double r,
                                          double tol) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "r must lie in (0,1)");
  }
  const Index banks = system.bank_count();
  const Matrix& liabilities = system.liabilities();
  for (Index i = 0; i < banks; ++i) {
    Index creditors = 0;
    for (Index j = 0; j < system.size(); ++j) creditors += liabilities(i, j) > 0.0 ? 1 : 0;
    if (creditors != 1) {
      throw Error(ErrorCode::NotSingleCreditor,
                  "bank " + std::to_string(i) + " has " + std::to_string(creditors) +
                      " creditors",
                  i);
    }
  }

  // 0/1 walk matrix read off the obligations: A(i, j) = 1 when bank j owes
  // bank i. With one creditor per bank this is the bank block of C.
  const Matrix adjacency =
      (liabilities.topLeftCorner(banks, banks).transpose().array() > 0.0).cast<double>().matrix();
  // r = m: beta_i = (1 - r) l_i, rescaled to one per bank.
  const Vector beta = beta_vector(system, r, r);
  const Vector& l = system.total_liabilities();
  Vector normalized_beta = Vector::Zero(system.size());
  for (Index i = 0; i < banks; ++i) normalized_beta[i] = beta[i] / ((1.0 - r) * l[i]);

  KatzReductionReport report;
  report.normalized_sigma =
      generalized_katz(system.claims(), r, normalized_beta, r).sigma.head(banks);
  report.katz = standard_katz(adjacency, r);
  report.max_abs_gap = max_abs_head(report.normalized_sigma - report.katz);
  report.passed = report.max_abs_gap <= tol;
  return report;
}

}  // namespace clearnet
