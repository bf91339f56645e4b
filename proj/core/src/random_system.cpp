#include "clearnet/random_system.hpp"

#include <cmath>
#include <random>

#include "clearnet/error.hpp"

namespace clearnet {

FinancialSystem generate_random_system(std::uint64_t seed, Index n_banks,
                                       double density, double weight_scale) {
  if (n_banks < 1) throw Error(ErrorCode::InvalidParameter, "n_banks must be at least 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "density must lie in (0,1]");
  }
  if (!(weight_scale > 0.0) || !std::isfinite(weight_scale)) {
    throw Error(ErrorCode::InvalidParameter, "weight_scale must be positive");
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(density);
  std::lognormal_distribution<double> weight(std::log(weight_scale), 1.0);
  std::uniform_real_distribution<double> cushion(0.1, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix bank = Matrix::Zero(n_banks, n_banks);
  for (Index i = 0; i < n_banks; ++i) {
    for (Index j = 0; j < n_banks; ++j) {
      if (i != j && edge(rng)) bank(i, j) = weight(rng);
    }
  }

  const Vector owed = bank.rowwise().sum();           // interbank liabilities
  const Vector claims = bank.colwise().sum().transpose();  // interbank claims
  Vector external(n_banks);
  for (Index i = 0; i < n_banks; ++i) {
    external[i] = claims[i] + cushion(rng) * (1.0 + owed[i]);
  }

  Vector o(n_banks);
  for (Index i = 0; i < n_banks; ++i) {
    const double l = owed[i] + external[i];
    o[i] = l - claims[i] + unit(rng) * l;
  }
  return build_system_with_sink(bank, external, o, 1.0);
}

}  // namespace clearnet
