#pragma once

// Convertibility decisions under stochastic SIO.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cohfilt/sio.hpp"
#include "cohfilt/states.hpp"

namespace cohfilt {

enum class VerdictReason { RankSufficient, RankDeficient, NoPureCompression };

std::string_view to_string(VerdictReason reason);

struct ConvertibilityVerdict {
  bool possible;
  std::optional<IncoherentProjector> witness;
  VerdictReason reason;
};

inline constexpr double kRankTol = 1e-10;
inline constexpr std::size_t kMaxEnumerationDim = 20;

// Possible iff C_r(from) >= C_r(to). No witness is attached.
ConvertibilityVerdict pure_to_pure(const PureState& from, const PureState& to);

struct SubsetCompression {
  std::vector<std::size_t> indices;  // 0-based, ascending
  double weight;                     // trace of the block; 0 when skipped
  bool rank_one;                     // second eigenvalue of the normalized block <= rank_tol
  std::size_t coherence_rank;        // diagonal entries above zero_tol
};

// Every nonempty index subset in lexicographic order of the sorted index lists.
// Throws DimensionTooLarge for d > 20.
std::vector<SubsetCompression> enumerate_compressions(const DensityMatrix& rho, double rank_tol = kRankTol);

// Possible iff some compression P rho P is rank one with coherence rank >=
// r_target; the witness is the lexicographically first such subset.
// Throws InvalidRank unless 1 <= r_target <= d, DimensionTooLarge for d > 20.
ConvertibilityVerdict pure_reachable(const DensityMatrix& rho, std::size_t r_target, double rank_tol = kRankTol);

// rho_1 = (1/15) [[5,4,4],[4,5,4],[4,4,5]]: high C_m, yet no pure coherent target.
DensityMatrix counterexample_source();
// rho_2 = (1/2) [[1,1,0],[1,1,0],[0,0,0]]: |+><+| padded with a zero row/column.
DensityMatrix counterexample_target();

struct CounterexampleDetails {
  double c_m_source;
  double c_m_target;
  ConvertibilityVerdict source_reaches_rank_two;
  ConvertibilityVerdict target_reaches_rank_two;
  std::vector<SubsetCompression> source_subsets;
  bool holds;
};

// C_m(rho_1) > C_m(rho_2), yet rho_1 cannot reach any rank-2 pure state, so
// the C_m ordering does not decide mixed-state convertibility.
CounterexampleDetails counterexample_details();
bool counterexample_check();

}  // namespace cohfilt
