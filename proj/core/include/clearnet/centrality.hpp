#ifndef CLEARNET_CENTRALITY_HPP
#define CLEARNET_CENTRALITY_HPP

#include "clearnet/linalg.hpp"
#include "clearnet/system.hpp"

namespace clearnet {

struct CentralityResult {
  Vector sigma;
  Vector beta;
  Rate r = 0.0;
  Rate m = 0.0;
  /// Max-norm of (I - rC) sigma - beta over the rows that were solved.
  double residual = 0.0;
};

/// beta_i = (1 - m_i) l_i - (r_i - m_i) (C l)_i on banks, 0 on the sink.
Vector beta_vector(const FinancialSystem& system, const Rate& r, const Rate& m);

/// sigma = (I - rC)^{-1} beta by a direct solve over every row of C.
/// `m` is recorded in the result only.
CentralityResult generalized_katz(const Matrix& c, const Rate& r,
                                  const Vector& beta, const Rate& m = 0.0);

/// System-level loss centrality: beta from `beta_vector`, sigma from the
/// bank rows of (I - rC) (the sink column of C is zero, so the bank rows
/// decouple). The sink entry of sigma is reported as 0.
CentralityResult loss_centrality(const FinancialSystem& system, const Rate& r,
                                 const Rate& m);

/// Textbook Katz centrality (I - alpha A)^{-1} 1.
Vector standard_katz(const Matrix& adjacency, double alpha);

/// Clearing vector under the full-default shock:
/// (I - rC)^{-1} ((r - m) C l - (1 - m) l) + l.
Vector closed_form_full_shock(const FinancialSystem& system, const Rate& r,
                              const Rate& m);

/// (I - (r - m) C)^{-1} m (l + r C l), evaluated as written.
Vector printed_relaxed_closed_form(const FinancialSystem& system, const Rate& r,
                                   const Rate& m);

}  // namespace clearnet

#endif  // CLEARNET_CENTRALITY_HPP
