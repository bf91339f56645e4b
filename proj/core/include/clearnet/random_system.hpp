#ifndef CLEARNET_RANDOM_SYSTEM_HPP
#define CLEARNET_RANDOM_SYSTEM_HPP

#include <cstdint>

#include "clearnet/system.hpp"

namespace clearnet {

/// Seeded random obligation network for test ensembles.
///
/// Interbank edges follow a directed Erdos-Renyi draw with probability
/// `density` and log-normal weights with median `weight_scale`. Each bank
/// owes the sink its total interbank claims plus u * (1 + its interbank
/// liabilities), u ~ U(0.1, 1), so (C l)_i < l_i holds for every bank.
/// Pre-shock assets o_i = l_i - (C l)_i + U(0,1) l_i leave every bank
/// solvent; the sink holds o = 1. Same seed, same system (per standard
/// library implementation).
FinancialSystem generate_random_system(std::uint64_t seed, Index n_banks,
                                       double density, double weight_scale = 1.0);

}  // namespace clearnet

#endif  // CLEARNET_RANDOM_SYSTEM_HPP
