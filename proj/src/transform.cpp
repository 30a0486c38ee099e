#include "cohfilt/transform.hpp"

#include <algorithm>
#include <cstdint>

#include "cohfilt/error.hpp"
#include "cohfilt/measures.hpp"

namespace cohfilt {

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::RankSufficient: return "RankSufficient";
    case VerdictReason::RankDeficient: return "RankDeficient";
    case VerdictReason::NoPureCompression: return "NoPureCompression";
  }
  return "Unknown";
}

ConvertibilityVerdict pure_to_pure(const PureState& from, const PureState& to) {
  if (from.dim() != to.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "source dim " + std::to_string(from.dim()) + " vs target dim " + std::to_string(to.dim()));
  }
  const bool ok = coherence_rank(from) >= coherence_rank(to);
  return {ok, std::nullopt, ok ? VerdictReason::RankSufficient : VerdictReason::RankDeficient};
}

std::vector<SubsetCompression> enumerate_compressions(const DensityMatrix& rho, double rank_tol) {
  const std::size_t d = rho.dim();
  if (d > kMaxEnumerationDim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "subset enumeration capped at d = " + std::to_string(kMaxEnumerationDim) + ", got " + std::to_string(d));
  }
  std::vector<SubsetCompression> out;
  out.reserve((std::size_t{1} << d) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << d); ++mask) {
    SubsetCompression entry{{}, 0.0, false, 0};
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::uint32_t{1} << i)) entry.indices.push_back(i);
    const IncoherentProjector projector(entry.indices, d);
    const auto& idx = projector.indices();
    double weight = 0.0;
    for (auto i : idx) weight += rho(i, i).real();
    if (weight > 1e-14) {
      Compression c = projector_compress(rho, projector);
      c.block *= 1.0 / c.weight;
      entry.weight = c.weight;
      const auto values = hermitian_eig(c.block).sorted_descending();
      entry.rank_one = values.size() < 2 || values[1] <= rank_tol;
      for (std::size_t a = 0; a < idx.size(); ++a)
        if (c.block(a, a).real() > kZeroTol) ++entry.coherence_rank;
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const SubsetCompression& x, const SubsetCompression& y) { return x.indices < y.indices; });
  return out;
}

ConvertibilityVerdict pure_reachable(const DensityMatrix& rho, std::size_t r_target, double rank_tol) {
  if (r_target < 1 || r_target > rho.dim()) {
    throw Error(ErrorCode::InvalidRank,
                "target coherence rank " + std::to_string(r_target) + " outside [1, " + std::to_string(rho.dim()) + "]");
  }
  for (const auto& entry : enumerate_compressions(rho, rank_tol)) {
    if (entry.weight > 0.0 && entry.rank_one && entry.coherence_rank >= r_target) {
      return {true, IncoherentProjector(entry.indices, rho.dim()), VerdictReason::RankSufficient};
    }
  }
  return {false, std::nullopt, VerdictReason::NoPureCompression};
}

DensityMatrix counterexample_source() {
  ComplexMatrix m = ComplexMatrix::from_rows({{5, 4, 4}, {4, 5, 4}, {4, 4, 5}});
  m *= 1.0 / 15.0;
  return validate_density(m);
}

DensityMatrix counterexample_target() {
  ComplexMatrix m = ComplexMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}});
  m *= 0.5;
  return validate_density(m);
}

CounterexampleDetails counterexample_details() {
  const DensityMatrix source = counterexample_source();
  const DensityMatrix target = counterexample_target();
  CounterexampleDetails out{
      .c_m_source = c_m(source),
      .c_m_target = c_m(target),
      .source_reaches_rank_two = pure_reachable(source, 2),
      .target_reaches_rank_two = pure_reachable(target, 2),
      .source_subsets = enumerate_compressions(source),
      .holds = false,
  };
  out.holds = out.c_m_source > out.c_m_target && !out.source_reaches_rank_two.possible;
  return out;
}

bool counterexample_check() { return counterexample_details().holds; }

}  // namespace cohfilt
