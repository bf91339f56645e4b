#include "clearnet/centrality.hpp"

#include "clearnet/error.hpp"

namespace clearnet {

namespace {

// I - diag(r) * C
Matrix resolvent_operator(const Matrix& c, const Vector& r) {
  return Matrix::Identity(c.rows(), c.cols()) - r.asDiagonal() * c;
}

}  // namespace

Vector beta_vector(const FinancialSystem& system, const Rate& r, const Rate& m) {
  const Index n = system.size();
  const Vector& l = system.total_liabilities();
  const Vector cl = system.claims() * l;
  const Vector rv = r.expand(n);
  const Vector mv = m.expand(n);
  Vector beta = Vector::Zero(n);
  for (Index i = 0; i < system.bank_count(); ++i) {
    beta[i] = (1.0 - mv[i]) * l[i] - (rv[i] - mv[i]) * cl[i];
  }
  return beta;
}

CentralityResult generalized_katz(const Matrix& c, const Rate& r,
                                  const Vector& beta, const Rate& m) {
  if (c.rows() != c.cols() || beta.size() != c.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "centrality inputs disagree in size");
  }
  const Matrix op = resolvent_operator(c, r.expand(c.rows()));
  CentralityResult out{.sigma = solve_dense(op, beta), .beta = beta, .r = r, .m = m};
  out.residual = max_abs_head(op * out.sigma - beta);
  return out;
}

CentralityResult loss_centrality(const FinancialSystem& system, const Rate& r,
                                 const Rate& m) {
  const Index banks = system.bank_count();
  const Vector beta = beta_vector(system, r, m);
  const Matrix block = system.claims().topLeftCorner(banks, banks);
  const Vector rb = r.expand(system.size()).head(banks);

  const Matrix op = resolvent_operator(block, rb);
  const Vector sigma_banks = solve_dense(op, beta.head(banks));

  CentralityResult out{.sigma = Vector::Zero(system.size()), .beta = beta, .r = r, .m = m};
  out.sigma.head(banks) = sigma_banks;
  out.residual = max_abs_head(op * sigma_banks - beta.head(banks));
  return out;
}

Vector standard_katz(const Matrix& adjacency, double alpha) {
  if (adjacency.rows() != adjacency.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "adjacency matrix must be square");
  }
  const Index n = adjacency.rows();
  return solve_dense(Matrix::Identity(n, n) - alpha * adjacency, Vector::Ones(n));
}

Vector closed_form_full_shock(const FinancialSystem& system, const Rate& r,
                              const Rate& m) {
  const Index n = system.size();
  const Vector& l = system.total_liabilities();
  const Vector cl = system.claims() * l;
  const Vector rv = r.expand(n);
  const Vector mv = m.expand(n);
  const Vector rhs = (rv - mv).cwiseProduct(cl) - (Vector::Ones(n) - mv).cwiseProduct(l);
  return solve_dense(resolvent_operator(system.claims(), rv), rhs) + l;
}

Vector printed_relaxed_closed_form(const FinancialSystem& system, const Rate& r,
                                   const Rate& m) {
  const Index n = system.size();
  const Vector& l = system.total_liabilities();
  const Vector rv = r.expand(n);
  const Vector mv = m.expand(n);
  const Vector rhs = mv.cwiseProduct(l + rv.cwiseProduct(system.claims() * l));
  return solve_dense(resolvent_operator(system.claims(), rv - mv), rhs);
}

}  // namespace clearnet
