#include "cohfilt/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "cohfilt/error.hpp"
#include "cohfilt/filtration.hpp"

namespace cohfilt {

namespace {

constexpr std::size_t kChunk = 4096;

double kraus_weight(const DensityMatrix& rho, std::span<const Complex> a) {
  if (a.size() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "Kraus diagonal length differs from state dim");
  double w = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) w += std::norm(a[j]) * rho(j, j).real();
  if (!(w > 1e-14)) throw Error(ErrorCode::DegenerateKraus, "Kraus operator annihilates the state");
  return w;
}

struct ChunkBest {
  double fidelity = -1.0;
  std::size_t index = 0;
  ComplexVector a;
};

}  // namespace

double direct_kraus_fidelity(const DensityMatrix& rho, std::span<const Complex> a) {
  const double w = kraus_weight(rho, a);
  Complex num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) num += a[i] * rho(i, j) * std::conj(a[j]);
  return num.real() / (static_cast<double>(rho.dim()) * w);
}

double rayleigh_fidelity(const DensityMatrix& rho, std::span<const Complex> a) {
  const double w = kraus_weight(rho, a);
  ComplexVector phi(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) phi[j] = std::sqrt(std::max(0.0, rho(j, j).real())) * std::conj(a[j]) / std::sqrt(w);
  const ComplexVector b_phi = filtration_matrix(rho).matrix() * std::span<const Complex>(phi);
  return inner(phi, b_phi).real() / static_cast<double>(rho.dim());
}

double permuted_kraus_fidelity(const DensityMatrix& rho, const Permutation& perm, std::span<const Complex> a) {
  kraus_weight(rho, a);
  const ComplexMatrix k = perm.matrix() * ComplexMatrix::diagonal(a);
  ComplexMatrix out = k * rho.matrix() * k.adjoint();
  out *= 1.0 / out.trace().real();
  const PureState target = mcs(rho.dim());
  return inner(target.amplitudes(), out * std::span<const Complex>(target.amplitudes())).real();
}

OracleResult random_search_fidelity(const DensityMatrix& rho, std::size_t n_samples, std::uint64_t seed,
                                    unsigned threads) {
  if (n_samples == 0) throw Error(ErrorCode::InvalidDimension, "oracle needs at least one sample");
  const std::size_t d = rho.dim();
  const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<ChunkBest> best(n_chunks);

  auto run_chunk = [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    ComplexVector a(d);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n_samples, begin + kChunk);
    ChunkBest& mine = best[c];
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& x : a) {
        const double re = gauss(rng);
        x = Complex(re, gauss(rng));
      }
      double w = 0.0;
      for (std::size_t j = 0; j < d; ++j) w += std::norm(a[j]) * rho(j, j).real();
      if (!(w > 1e-14)) continue;
      const double f = direct_kraus_fidelity(rho, a);
      if (f > mine.fidelity) {
        mine.fidelity = f;
        mine.index = s;
        mine.a = a;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
    });
  }
  for (auto& th : pool) th.join();

  // Chunks are visited in sample order; strict > keeps the lowest index on ties.
  const ChunkBest* winner = &best.front();
  for (const auto& b : best)
    if (b.fidelity > winner->fidelity) winner = &b;
  if (winner->fidelity < 0.0) throw Error(ErrorCode::DegenerateKraus, "every sampled Kraus annihilated the state");
  return OracleResult{winner->fidelity, winner->a, n_samples, seed};
}

bool ratio_inequality_check(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()) + " must match and be >= 1");
  }
  double sum_p = 0.0, sum_q = 0.0, best_ratio = 0.0;
  for (std::size_t mu = 0; mu < p.size(); ++mu) {
    if (!(p[mu] > 0.0) || !(q[mu] > 0.0)) {
      throw Error(ErrorCode::NonPositiveEntry, "entry " + std::to_string(mu) + " is not positive");
    }
    sum_p += p[mu];
    sum_q += q[mu];
    best_ratio = std::max(best_ratio, p[mu] / q[mu]);
  }
  // Both sides carry rounding; compare with a relative ulp-scale slack.
  return sum_p / sum_q <= best_ratio * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

}  // namespace cohfilt
