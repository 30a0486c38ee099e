#include "cohfilt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cohfilt/battery.hpp"
#include "cohfilt/error.hpp"
#include "cohfilt/filtration.hpp"
#include "cohfilt/sio.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cohfilt;
using cohfilt::testing::max_off_diagonal;
using cohfilt::testing::rho_from_rows;

namespace {

DensityMatrix rho1() { return rho_from_rows({{5, 4, 4}, {4, 5, 4}, {4, 4, 5}}, 1.0 / 15.0); }
DensityMatrix rho2() { return rho_from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}, 0.5); }

std::vector<DensityMatrix> battery(std::size_t d, std::size_t n, std::uint64_t seed) {
  std::vector<DensityMatrix> out;
  for (auto& e : make_state_battery(d, n, seed)) out.push_back(e.state);
  return out;
}

}  // namespace

TEST(DeltaRobustness, Examples) {
  EXPECT_NEAR(delta_robustness(rho1()), 2.6, 1e-12);
  EXPECT_DOUBLE_EQ(delta_robustness(DiagonalState({0.25, 0.75}).density()), 1.0);
  for (std::size_t d : {2, 3, 6}) EXPECT_NEAR(delta_robustness(mcs(d).density()), static_cast<double>(d), 1e-12);
}

TEST(DeltaRobustnessBisection, Examples) {
  EXPECT_NEAR(delta_robustness_bisection(rho2()), 2.0, 1e-7);
  EXPECT_NEAR(delta_robustness_bisection(DiagonalState({0.6, 0.1, 0.3}).density()), 1.0, 1e-7);
  EXPECT_NEAR(delta_robustness_bisection(rho1()), 2.6, 1e-7);
}

TEST(DeltaRobustnessBisection, InfeasibleAtUpperBound) {
  // Not PSD (eigenvalue -0.4), admitted only through a loose validation profile.
  ToleranceProfile loose;
  loose.psd_tol = 1.0;
  const DensityMatrix bad = validate_density(ComplexMatrix::from_rows({{0.5, 0.9}, {0.9, 0.5}}), loose);
  try {
    delta_robustness_bisection(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleAtUpperBound);
  }
}

TEST(DeltaRobustness, TwoRoutesAgree) {
  for (std::size_t d : {2, 3, 4, 6}) {
    for (const DensityMatrix& rho : battery(d, 60, 100 + d)) {
      EXPECT_NEAR(delta_robustness(rho), delta_robustness_bisection(rho), 1e-7);
    }
  }
}

TEST(DeltaRobustness, RangeAndExtremality) {
  std::mt19937_64 rng(5);
  for (std::size_t d : {2, 3, 5}) {
    const double dd = static_cast<double>(d);
    for (const DensityMatrix& rho : battery(d, 60, 200 + d)) {
      const double r = delta_robustness(rho);
      EXPECT_GE(r, 1.0 - 1e-12);
      EXPECT_LE(r, dd + 1e-12);
    }
    // Rank one with full coherence rank reaches d; any other phase pattern too.
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::vector<double> phases(d);
    for (auto& x : phases) x = angle(rng);
    EXPECT_NEAR(delta_robustness(rotate_phases(mcs(d).density(), phases)), dd, 1e-10);
    // Near-extremal: small admixture of noise, or a missing amplitude, stays below d.
    const DensityMatrix noisy = mix(mcs(d).density(), DiagonalState(std::vector<double>(d, 1.0 / dd)).density(), 0.99);
    EXPECT_LT(delta_robustness(noisy), dd - 1e-3);
    ComplexVector amps(d, 1.0);
    amps[0] = 0.0;
    EXPECT_NEAR(delta_robustness(PureState::normalized(amps).density()), dd - 1.0, 1e-10);
  }
}

TEST(Cm, Examples) {
  EXPECT_NEAR(c_m(rho1()), 8.0 / 15.0, 1e-9);
  EXPECT_NEAR(c_m(rho2()), 1.0 / 3.0, 1e-9);
  EXPECT_EQ(c_m(DiagonalState({0.2, 0.3, 0.5}).density()), 0.0);
}

TEST(Report, Examples) {
  const MeasureReport r1 = report(rho1());
  EXPECT_NEAR(r1.c_s, 13.0 / 15.0, 1e-12);
  EXPECT_NEAR(r1.c_m, 8.0 / 15.0, 1e-12);
  EXPECT_NEAR(r1.robustness, 2.6, 1e-12);
  EXPECT_FALSE(r1.is_incoherent);
  EXPECT_FALSE(r1.is_max_extremal);

  const MeasureReport r3 = report(mcs(3).density());
  EXPECT_NEAR(r3.c_s, 1.0, 1e-12);
  EXPECT_NEAR(r3.c_m, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r3.robustness, 3.0, 1e-12);
  EXPECT_TRUE(r3.is_max_extremal);

  const MeasureReport rd = report(DiagonalState({0.2, 0.8}).density());
  EXPECT_DOUBLE_EQ(rd.c_s, 0.5);
  EXPECT_DOUBLE_EQ(rd.c_m, 0.0);
  EXPECT_DOUBLE_EQ(rd.robustness, 1.0);
  EXPECT_TRUE(rd.is_incoherent);
  EXPECT_EQ(rd.dim, 2u);
}

TEST(Report, Invariants) {
  for (std::size_t d : {2, 3, 4}) {
    const double dd = static_cast<double>(d);
    for (const DensityMatrix& rho : battery(d, 40, 300 + d)) {
      const MeasureReport r = report(rho);
      EXPECT_NEAR(r.c_m, r.c_s - 1.0 / dd, 1e-12);
      EXPECT_NEAR(r.robustness, dd * r.c_s, 1e-12);
      EXPECT_NEAR(r.robustness, r.robustness_bisect, 1e-7);
      EXPECT_GE(r.c_m, 0.0);
      EXPECT_LE(r.c_m, 1.0 - 1.0 / dd + 1e-12);
    }
  }
}

TEST(Axioms, Faithfulness) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, rng);
    const double c = c_m(rho);
    EXPECT_GE(c, -1e-12);
    if (c <= 1e-9) EXPECT_LE(max_off_diagonal(rho.matrix()), 1e-5);
    EXPECT_LE(c_m(random_diagonal(d, rng)), 1e-12);
  }
}

TEST(Axioms, MonotoneUnderTracePreservingSio) {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, rng);
    const SIOInstrument ins = complete(random_instrument(d, 1 + rep % 3, rng));
    EXPECT_LE(c_m(apply_instrument(rho, ins).state), c_m(rho) + 1e-9);
  }
}

TEST(Axioms, StrongMonotonicityWithSingletonSplits) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, rng);
    const SIOInstrument ins = complete(random_instrument(d, 1 + rep % 3, rng));
    double total = 0.0;
    for (const SIOKraus& k : ins.kraus()) {
      const ComplexMatrix out = k.matrix() * rho.matrix() * k.matrix().adjoint();
      const double p = out.trace().real();
      if (p <= 1e-12) continue;
      total += p * c_m(apply_instrument(rho, SIOInstrument({k})).state);
    }
    EXPECT_LE(total, c_m(rho) + 1e-9);
  }
}

// Convexity fails for C_m. Exact instance: |1><1| and |+><+| mixed evenly give
// c_m = 1/(2 sqrt 3) against a convex bound of 1/4.
TEST(Axioms, ConvexityFailsOnKnownPair) {
  const DensityMatrix a = DiagonalState({1.0, 0.0}).density();
  const DensityMatrix b = rho_from_rows({{1, 1}, {1, 1}}, 0.5);
  const double mixed = c_m(mix(a, b, 0.5));
  EXPECT_NEAR(mixed, 0.5 / std::sqrt(3.0), 1e-12);
  EXPECT_GT(mixed, 0.5 * c_m(a) + 0.5 * c_m(b) + 0.03);
}

TEST(Axioms, QuasiConvexity) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const DensityMatrix a = random_density(d, 1 + rep % d, rng);
    const DensityMatrix b = random_density(d, 1 + (rep / 3) % d, rng);
    const double bound = std::max(delta_robustness(a), delta_robustness(b));
    for (int k = 1; k <= 9; ++k) EXPECT_LE(delta_robustness(mix(a, b, 0.1 * k)), bound + 1e-9);
  }
}

TEST(Measures, StrictGapFromQubitCompression) {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t d = 2 + rep % 4;
    const DensityMatrix rho = random_density(d, 1 + rep % d, rng);
    const double cs = c_s(rho);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (std::abs(rho(i, j)) <= 1e-6) continue;
        const Compression c = projector_compress(rho, IncoherentProjector({i, j}, d));
        ComplexMatrix block = c.block;
        block *= 1.0 / c.weight;
        const double q = qubit_closed_form(validate_density(block));
        EXPECT_GE(cs, 2.0 * q / static_cast<double>(d) - 1e-12);
        EXPECT_GT(c_m(rho), 0.0);
      }
    }
  }
}

// Exploratory: for pure states the robustness reproduces the coherence rank.
TEST(Exploratory, PureRobustnessEqualsCoherenceRank) {
  std::mt19937_64 rng(53);
  std::bernoulli_distribution keep(0.6);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t d = 2 + rep % 6;
    PureState phi = random_pure(d, rng);
    ComplexVector amps = phi.amplitudes();
    for (auto& a : amps)
      if (!keep(rng)) a = 0.0;
    if (norm2(amps) == 0.0) amps[0] = 1.0;
    phi = PureState::normalized(amps);
    EXPECT_NEAR(delta_robustness(phi.density()), static_cast<double>(coherence_rank(phi)), 1e-10);
  }
}
