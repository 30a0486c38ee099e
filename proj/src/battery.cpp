#include "cohfilt/battery.hpp"

#include <algorithm>
#include <numeric>

namespace cohfilt {

std::vector<BatteryState> make_state_battery(std::size_t d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BatteryState> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (d == 1) {
      out.push_back({BatteryKind::FullRank, random_density(1, 1, rng)});
      continue;
    }
    switch (n % 3) {
      case 0:
        out.push_back({BatteryKind::FullRank, random_density(d, d, rng)});
        break;
      case 1: {
        const std::size_t rank = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
        out.push_back({BatteryKind::RankDeficient, random_density(d, rank, rng)});
        break;
      }
      default: {
        const std::size_t sub = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
        const std::size_t rank = std::uniform_int_distribution<std::size_t>(1, sub)(rng);
        std::vector<std::size_t> idx(d);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(sub);
        out.push_back({BatteryKind::ZeroPadded, embed(random_density(sub, rank, rng), d, idx)});
        break;
      }
    }
  }
  return out;
}

DensityMatrix random_diagonal(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(d);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return validate_density(ComplexMatrix::diagonal(std::span<const double>(w)));
}

}  // namespace cohfilt
