#ifndef CLEARNET_TESTS_FIXTURES_HPP
#define CLEARNET_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "clearnet/random_system.hpp"
#include "clearnet/system.hpp"

namespace clearnet::testing {

// Two banks plus sink. l = (10, 10, 0); C bank block [[0, .3], [.2, 0]].
inline FinancialSystem sys_a(std::optional<Vector> external = std::nullopt) {
  Matrix l(3, 3);
  l << 0, 2, 8,
       3, 0, 7,
       0, 0, 0;
  Vector o(3);
  o << 8, 9, 1;
  return build_system(l, o, std::move(external));
}

// Banks owe only the sink. l = (10, 8, 0).
inline FinancialSystem sys_0(std::optional<Vector> external = std::nullopt) {
  Matrix l(3, 3);
  l << 0, 0, 10,
       0, 0, 8,
       0, 0, 0;
  Vector o(3);
  o << 12, 4, 1;
  return build_system(l, o, std::move(external));
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Spectral radius from a full eigendecomposition; independent of the power
// iteration under test.
inline double eigen_radius(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> solver(m, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// sum_{k=0}^{terms} (diag(r) C)^k beta
inline Vector neumann_series(const Matrix& c, double r, const Vector& beta, int terms) {
  Vector term = beta;
  Vector sum = beta;
  for (int k = 1; k <= terms; ++k) {
    term = r * (c * term);
    sum += term;
  }
  return sum;
}

struct EnsembleMember {
  std::uint64_t seed;
  Index banks;
  double density;
  FinancialSystem system;
};

// Seeded ensemble: banks in [2, 49], density in [0.2, 0.8].
inline std::vector<EnsembleMember> random_ensemble(int count, std::uint64_t base_seed = 1) {
  std::mt19937_64 rng(base_seed);
  std::uniform_int_distribution<Index> size(2, 49);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  std::vector<EnsembleMember> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = base_seed * 1000003ULL + static_cast<std::uint64_t>(k);
    const Index n = size(rng);
    const double d = density(rng);
    out.push_back({seed, n, d, generate_random_system(seed, n, d)});
  }
  return out;
}

// Each bank owes exactly one creditor: a bank with a larger index or the
// sink. Gives chains and trees draining into the sink.
inline FinancialSystem single_creditor_system(std::uint64_t seed, Index banks) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amount(0.5, 5.0);
  Matrix l = Matrix::Zero(banks + 1, banks + 1);
  for (Index i = 0; i < banks; ++i) {
    std::uniform_int_distribution<Index> pick(i + 1, banks);
    l(i, pick(rng)) = amount(rng);
  }
  Vector o = Vector::Ones(banks + 1);
  return build_system(l, o);
}

// Shock hitting a random subset of banks: each hit bank keeps a fraction
// of its pre-shock assets in (0.05, 0.6).
inline FinancialSystem partial_shock(const FinancialSystem& system, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(0.4);
  std::uniform_real_distribution<double> keep(0.05, 0.6);
  Vector a = system.pre_shock_assets();
  bool any = false;
  for (Index i = 0; i < system.bank_count(); ++i) {
    if (hit(rng)) {
      a[i] *= keep(rng);
      any = true;
    }
  }
  if (!any && system.bank_count() > 0) a[0] *= 0.1;
  return system.with_external_assets(a);
}

}  // namespace clearnet::testing

#endif  // CLEARNET_TESTS_FIXTURES_HPP
