#pragma once

// Seeded families of random test states, shared by the property suites,
// the acceptance tests and the `suite` CLI command.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cohfilt/states.hpp"

namespace cohfilt {

enum class BatteryKind { FullRank, RankDeficient, ZeroPadded };

struct BatteryState {
  BatteryKind kind;
  DensityMatrix state;
};

// Cycles through full-rank Ginibre states, rank-deficient ones (rank drawn
// from [1, d-1]) and states embedded from d' < d on a random index subset, so
// the zero-diagonal branch is exercised. For d == 1 every entry is |1><1|.
std::vector<BatteryState> make_state_battery(std::size_t d, std::size_t count, std::uint64_t seed);

// Random diagonal state with Dirichlet(1, ..., 1) weights.
DensityMatrix random_diagonal(std::size_t d, std::mt19937_64& rng);

}  // namespace cohfilt
