#include <gtest/gtest.h>

#include "clearnet/centrality.hpp"
#include "clearnet/clearing.hpp"
#include "clearnet/error.hpp"
#include "clearnet/spectral.hpp"
#include "support/fixtures.hpp"

namespace clearnet {
namespace {

using testing::sys_0;
using testing::sys_a;
using testing::vec;

TEST(BetaVector, HandValues) {
  EXPECT_TRUE(beta_vector(sys_a(), 0.8, 0.5).isApprox(vec({4.1, 4.4, 0}), 1e-14));
  EXPECT_TRUE(beta_vector(sys_a(), 0.6, 0.6).isApprox(vec({4, 4, 0}), 1e-14));
  const FinancialSystem empty = build_system(Matrix::Zero(3, 3), vec({1, 1, 1}));
  EXPECT_EQ(beta_vector(empty, 0.8, 0.5), Vector::Zero(3));
}

TEST(GeneralizedKatz, SysA) {
  const CentralityResult res =
      generalized_katz(sys_a().claims(), 0.8, vec({4.1, 4.4, 0}), 0.5);
  // sigma1 - 0.24 sigma2 = 4.1, sigma2 - 0.16 sigma1 = 4.4.
  const double s1 = (4.1 + 0.24 * 4.4) / 0.9616;
  EXPECT_NEAR(res.sigma[0], s1, 1e-12);
  EXPECT_NEAR(res.sigma[1], 4.4 + 0.16 * s1, 1e-12);
  EXPECT_NEAR(res.sigma[0], 5.36190, 1e-4);
  EXPECT_NEAR(res.sigma[1], 5.25790, 1e-4);
  EXPECT_LE(res.residual, 1e-12);
}

TEST(GeneralizedKatz, TrivialCases) {
  const Matrix c = sys_a().claims();
  EXPECT_EQ(generalized_katz(c, 0.8, Vector::Zero(3)).sigma, Vector::Zero(3));
  const Vector beta = vec({1, 2, 3});
  EXPECT_EQ(generalized_katz(Matrix::Zero(3, 3), 0.8, beta).sigma, beta);
  EXPECT_THROW(generalized_katz(c, 0.8, vec({1, 2})), Error);
}

TEST(LossCentrality, MatchesClearingLosses) {
  const CentralityResult res = loss_centrality(sys_a(), 0.8, 0.5);
  ClearingParams params;
  params.r = 0.8;
  const FinancialSystem shocked = sys_a(vec({3.5, 4, 1}));
  const ClearingSolution sol = fictitious_default_sequence(shocked, params);
  const Vector loss = systemic_loss(sol, shocked.total_liabilities());
  EXPECT_LE(max_abs_head(res.sigma - loss, 2), 1e-12);
  EXPECT_EQ(res.sigma[2], 0.0);
}

TEST(StandardKatz, HandValues) {
  EXPECT_EQ(standard_katz(Matrix::Zero(3, 3), 0.5), Vector::Ones(3));
  Matrix cycle(2, 2);
  cycle << 0, 1, 1, 0;
  EXPECT_TRUE(standard_katz(cycle, 0.5).isApprox(vec({2, 2}), 1e-14));
  // Leaves 0..2 point at hub 3; entry (hub, leaf) carries the edge.
  Matrix star = Matrix::Zero(4, 4);
  star(3, 0) = star(3, 1) = star(3, 2) = 1;
  EXPECT_TRUE(standard_katz(star, 0.25).isApprox(vec({1, 1, 1, 1.75}), 1e-14));
}

TEST(ClosedFormFullShock, Values) {
  const Vector p = closed_form_full_shock(sys_a(), 0.8, 0.5);
  EXPECT_NEAR(p[0], 4.63810, 1e-4);
  EXPECT_NEAR(p[1], 4.74210, 1e-4);
  const Vector p0 = closed_form_full_shock(sys_0(), 0.4, 0.3);
  EXPECT_TRUE(p0.head(2).isApprox(vec({3, 2.4}), 1e-14));
}

TEST(PrintedRelaxedClosedForm, Values) {
  EXPECT_TRUE(printed_relaxed_closed_form(sys_a(), 0.5, 0.5).head(2).isApprox(vec({5.75, 5.5}),
                                                                          1e-14));
  EXPECT_TRUE(printed_relaxed_closed_form(sys_0(), 0.7, 0.3).head(2).isApprox(vec({3, 2.4}),
                                                                          1e-14));
  const FinancialSystem s = sys_a();
  const Vector& l = s.total_liabilities();
  const Vector expected = 0.6 * l + 0.36 * (s.claims() * l);
  EXPECT_TRUE(printed_relaxed_closed_form(s, 0.6, 0.6).head(2).isApprox(expected.head(2), 1e-14));
}

// sigma is linear in beta and matches the truncated walk sum.
TEST(GeneralizedKatz, LinearityAndNeumann) {
  for (const auto& member : testing::random_ensemble(30, 6)) {
    const Matrix& c = member.system.claims();
    const Index n = c.rows();
    const double rho = spectral_radius(c);
    const double r = std::min(1.0, 0.95 / std::max(rho, 1e-3));
    const Vector b1 = beta_vector(member.system, r, 0.3);
    const Vector b2 = Vector::LinSpaced(n, 1.0, 2.0);
    const Vector s1 = generalized_katz(c, r, b1).sigma;
    const Vector s2 = generalized_katz(c, r, b2).sigma;
    const Vector s12 = generalized_katz(c, r, 2.0 * b1 - 3.0 * b2).sigma;
    EXPECT_LE((s12 - (2.0 * s1 - 3.0 * s2)).cwiseAbs().maxCoeff(),
              1e-10 * std::max(1.0, s12.cwiseAbs().maxCoeff()));
    const Vector b08 = beta_vector(member.system, 0.8, 0.3);
    const Vector series = testing::neumann_series(c, 0.8, b08, 200);
    EXPECT_LE((series - generalized_katz(c, 0.8, b08).sigma).cwiseAbs().maxCoeff(), 1e-8)
        << member.seed;
  }
}

TEST(LossCentrality, NonnegativeUnderFullShock) {
  for (const auto& member : testing::random_ensemble(30, 12)) {
    for (double r : {0.2, 0.9}) {
      for (double m : {0.1, 0.8}) {
        const CentralityResult res = loss_centrality(member.system, r, m);
        EXPECT_GE(res.sigma.minCoeff(), -1e-12) << member.seed;
      }
    }
  }
}

}  // namespace
}  // namespace clearnet
