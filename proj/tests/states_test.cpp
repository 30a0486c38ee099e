#include "cohfilt/states.hpp"

#include <cmath>
#include <random>

#include "cohfilt/battery.hpp"
#include "cohfilt/error.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cohfilt;
using cohfilt::testing::rho_from_rows;

namespace {

DensityMatrix rho1() { return rho_from_rows({{5, 4, 4}, {4, 5, 4}, {4, 4, 5}}, 1.0 / 15.0); }
DensityMatrix rho2() { return rho_from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}, 0.5); }

ErrorCode code_of(const ComplexMatrix& m) {
  try {
    validate_density(m);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "matrix unexpectedly valid";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(ValidateDensity, AcceptsPlusStateAndOverlapState) {
  ComplexMatrix plus = ComplexMatrix::from_rows({{1, 1}, {1, 1}});
  plus *= 0.5;
  EXPECT_NO_THROW(validate_density(plus));
  EXPECT_NO_THROW(rho1());
}

TEST(ValidateDensity, RejectsWithNamedBound) {
  EXPECT_EQ(code_of(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.1})), ErrorCode::TraceNotOne);
  EXPECT_EQ(code_of(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})), ErrorCode::NotPSD);
  EXPECT_EQ(code_of(ComplexMatrix::from_rows({{0.5, 0.1}, {0.0, 0.5}})), ErrorCode::NotHermitian);
  ComplexMatrix nan = ComplexMatrix::identity(1);
  nan(0, 0) = std::nan("");
  EXPECT_EQ(code_of(nan), ErrorCode::NonFinite);

  try {
    validate_density(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.1}));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("0.1"), std::string::npos) << e.what();
  }
}

TEST(Dephase, Examples) {
  const DiagonalState d1 = dephase(rho1());
  for (double p : d1.probs()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);

  const std::vector<double> p{0.2, 0.5, 0.3};
  EXPECT_EQ(dephase(DiagonalState(p).density()).probs(), p);

  const DiagonalState uniform = dephase(mcs(4).density());
  for (double q : uniform.probs()) EXPECT_NEAR(q, 0.25, 1e-15);
}

TEST(PinvSqrt, Examples) {
  const ComplexMatrix a = pinv_sqrt(DiagonalState({0.5, 0.5, 0.0}));
  EXPECT_NEAR(a(0, 0).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a(1, 1).real(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(a(2, 2), Complex(0.0));

  const ComplexMatrix b = pinv_sqrt(DiagonalState({0.25, 0.25, 0.25, 0.25}));
  EXPECT_LE(max_abs_diff(b, 2.0 * ComplexMatrix::identity(4)), 1e-15);

  EXPECT_EQ(pinv_sqrt(DiagonalState({1.0, 0.0})), ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0}));
}

TEST(PinvSqrt, SandwichIsSupportProjector) {
  for (const auto& entry : make_state_battery(5, 60, 17)) {
    const DiagonalState dephased = dephase(entry.state);
    const ComplexMatrix d = pinv_sqrt(dephased);
    const ComplexMatrix p = d * ComplexMatrix::diagonal(std::span<const double>(dephased.probs())) * d;
    for (std::size_t i = 0; i < 5; ++i) {
      const double expected = dephased.probs()[i] > kZeroTol ? 1.0 : 0.0;
      EXPECT_NEAR(p(i, i).real(), expected, 1e-12);
    }
    EXPECT_LE(cohfilt::testing::max_off_diagonal(p), 1e-12);
  }
}

TEST(Mcs, Amplitudes) {
  EXPECT_EQ(mcs(1).amplitudes(), ComplexVector{1.0});
  const PureState two = mcs(2), four = mcs(4);
  for (const auto& a : two.amplitudes()) EXPECT_NEAR(a.real(), M_SQRT1_2, 1e-15);
  for (const auto& a : four.amplitudes()) EXPECT_DOUBLE_EQ(a.real(), 0.5);
  EXPECT_THROW(mcs(0), Error);
}

TEST(FidelityWithPure, Examples) {
  const PureState phi = PureState::normalized({1.0, Complex(0.0, 2.0), -1.0});
  EXPECT_NEAR(fidelity_with_pure(phi.density(), phi), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_with_pure(DiagonalState({0.25, 0.25, 0.25, 0.25}).density(),
                                 PureState::normalized({1.0, 2.0, Complex(0, 1), 0.5})),
              0.25, 1e-15);
  // (1/3) * sum of entries of rho_2 = 2/3
  EXPECT_NEAR(fidelity_with_pure(rho2(), mcs(3)), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(fidelity_with_pure(rho2(), mcs(2)), Error);
}

TEST(FidelityWithPure, StaysInUnitInterval) {
  std::mt19937_64 rng(4);
  for (const auto& entry : make_state_battery(4, 300, 8)) {
    const double f = fidelity_with_pure(entry.state, random_pure(4, rng));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(CoherenceRank, Examples) {
  EXPECT_EQ(coherence_rank(mcs(5)), 5u);
  EXPECT_EQ(coherence_rank(PureState({1.0, 0.0, 0.0})), 1u);
  EXPECT_EQ(coherence_rank(PureState({std::sqrt(0.5), std::sqrt(0.5), 0.0})), 2u);
}

TEST(IsIncoherent, Examples) {
  EXPECT_TRUE(is_incoherent(DiagonalState({0.3, 0.7}).density()));
  EXPECT_FALSE(is_incoherent(rho1()));
  EXPECT_FALSE(is_incoherent(mcs(2).density()));
}

TEST(RandomDensity, Examples) {
  const DensityMatrix pure = random_density(2, 1, std::uint64_t{99});
  EXPECT_NEAR(hermitian_eig(pure.matrix()).sorted_descending()[1], 0.0, 1e-14);

  const DensityMatrix full = random_density(3, 3, std::uint64_t{99});
  ComplexMatrix shifted = full.matrix();
  for (std::size_t i = 0; i < 3; ++i) shifted(i, i) -= 1e-6;
  EXPECT_TRUE(is_psd(shifted, 0.0));

  EXPECT_EQ(random_density(4, 2, std::uint64_t{5}).matrix(), random_density(4, 2, std::uint64_t{5}).matrix());
  EXPECT_NE(random_density(4, 2, std::uint64_t{5}).matrix(), random_density(4, 2, std::uint64_t{6}).matrix());
}

TEST(RandomDensity, RejectsBadRank) {
  try {
    random_density(3, 4, std::uint64_t{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRank);
  }
  EXPECT_THROW(random_density(3, 0, std::uint64_t{1}), Error);
}

TEST(DensityMatrix, SupportContainedInDephasedSupport) {
  for (std::size_t d : {2, 3, 5, 8}) {
    for (const auto& entry : make_state_battery(d, 90, d)) {
      const DensityMatrix& rho = entry.state;
      for (std::size_t m = 0; m < d; ++m) {
        if (rho(m, m).real() > kZeroTol) continue;
        for (std::size_t j = 0; j < d; ++j) {
          EXPECT_LE(std::abs(rho(m, j)), std::sqrt(kZeroTol));
          EXPECT_LE(std::abs(rho(j, m)), std::sqrt(kZeroTol));
        }
      }
    }
  }
}

TEST(Embed, CreatesExactZeroRows) {
  const DensityMatrix small = random_density(2, 2, std::uint64_t{3});
  const std::vector<std::size_t> idx{3, 1};
  const DensityMatrix big = embed(small, 4, idx);
  EXPECT_EQ(big(0, 0), Complex(0.0));
  EXPECT_EQ(big(2, 2), Complex(0.0));
  EXPECT_EQ(big(3, 1), small(0, 1));
  EXPECT_THROW(embed(small, 4, std::vector<std::size_t>{1, 1}), Error);
}

TEST(PureState, NormalizationContract) {
  EXPECT_THROW(PureState({1.0, 1.0}), Error);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}), Error);
  EXPECT_NO_THROW(PureState::normalized({3.0, 4.0}));
}
