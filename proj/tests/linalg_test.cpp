#include "cohfilt/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "cohfilt/error.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cohfilt;
using cohfilt::testing::random_hermitian;
using cohfilt::testing::random_permutation;
using cohfilt::testing::random_vector;

namespace {

// Elementary symmetric functions of the eigenvalues, straight from the entries
// (characteristic polynomial lambda^3 - e1 lambda^2 + e2 lambda - e3).
std::array<double, 3> char_poly_3x3(const ComplexMatrix& a) {
  const double e1 = (a(0, 0) + a(1, 1) + a(2, 2)).real();
  auto minor = [&](int i, int j) { return (a(i, i) * a(j, j) - a(i, j) * a(j, i)).real(); };
  const double e2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
  const Complex det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  return {e1, e2, det.real()};
}

// Largest real root by a downward grid scan followed by bisection. Only valid
// when that root is simple.
double largest_root_brute_force(const std::array<double, 3>& e, double bound) {
  auto p = [&](double x) { return ((x - e[0]) * x + e[1]) * x - e[2]; };
  const double step = 1e-3;
  double hi = bound;
  double lo = hi - step;
  while (p(lo) > 0.0) {
    hi = lo;
    lo -= step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double residual(const ComplexMatrix& a, const EigenPair& pair) {
  ComplexVector av = a * std::span<const Complex>(pair.vector);
  for (std::size_t i = 0; i < av.size(); ++i) av[i] -= pair.value * pair.vector[i];
  return norm2(av);
}

}  // namespace

TEST(HermitianEigMax, IdentityPicksFirstColumn) {
  const EigenPair p = hermitian_eig_max(ComplexMatrix::identity(3));
  EXPECT_DOUBLE_EQ(p.value, 1.0);
  EXPECT_NEAR(norm2(p.vector), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(p.vector[0]), 1.0, 1e-15);
}

TEST(HermitianEigMax, ScaledOverlapMatrixMatchesCharacteristicPolynomial) {
  ComplexMatrix a = ComplexMatrix::from_rows({{5, 4, 4}, {4, 5, 4}, {4, 4, 5}});
  a *= 0.2;
  const double oracle = largest_root_brute_force(char_poly_3x3(a), a.frobenius_norm() + 1.0);
  EXPECT_NEAR(oracle, 2.6, 1e-12);  // frozen from the oracle

  const EigenPair p = hermitian_eig_max(a);
  EXPECT_NEAR(p.value, 2.6, 1e-12);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const Complex phase = p.vector[0] / std::abs(p.vector[0]);
  for (const auto& x : p.vector) EXPECT_NEAR(std::abs(x / phase - inv_sqrt3), 0.0, 1e-12);
  EXPECT_LE(residual(a, p), 1e-11 * a.frobenius_norm());
}

TEST(HermitianEigMax, RankOneSymmetric) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1, 1}, {1, 1}});
  const EigenPair p = hermitian_eig_max(a);
  EXPECT_NEAR(p.value, 2.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(p.vector, ComplexVector{M_SQRT1_2, M_SQRT1_2})), 1.0, 1e-14);
}

TEST(HermitianEigMax, RejectsNonHermitian) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1, 2}, {0, 1}});
  try {
    hermitian_eig_max(a);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(HermitianEigMax, ToleratesTinyAntiHermitianNoise) {
  ComplexMatrix a = ComplexMatrix::from_rows({{1, 1}, {1, 1}});
  a(0, 1) += Complex(0.0, 5e-11);
  EXPECT_NEAR(hermitian_eig_max(a).value, 2.0, 1e-9);
}

TEST(HermitianEigMax, SweepCapRaisesNoConvergence) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1, 1}, {1, 1}});
  try {
    hermitian_eig_max(a, {.max_sweeps = 0});
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(HermitianEig, AgreesWithEigenOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  for (std::size_t d : {1, 2, 3, 5, 8, 16, 33}) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix a = random_hermitian(d, rng);
      Eigen::MatrixXcd e(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) e(i, j) = a(i, j);
      const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e).eigenvalues();

      const EigenDecomposition eig = hermitian_eig(a);
      std::vector<double> mine = eig.values;
      std::sort(mine.begin(), mine.end());
      for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(mine[k], ref(k), 1e-11 * a.frobenius_norm()) << "d=" << d;

      const EigenPair top = hermitian_eig_max(a);
      EXPECT_NEAR(norm2(top.vector), 1.0, 1e-12);
      EXPECT_LE(residual(a, top), 1e-11 * a.frobenius_norm());
    }
  }
}

TEST(HermitianEig, LargestSupportedDimensionConverges) {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = random_hermitian(256, rng);
  const EigenPair top = hermitian_eig_max(a);
  EXPECT_LE(residual(a, top), 1e-11 * a.frobenius_norm());
}

TEST(HermitianEigMax, DominatesRandomRayleighQuotients) {
  std::mt19937_64 rng(7);
  for (std::size_t d : {2, 4, 6}) {
    const ComplexMatrix a = random_hermitian(d, rng);
    const double top = hermitian_eig_max(a).value;
    double best = -1e300;
    for (int s = 0; s < 10000; ++s) {
      ComplexVector v = random_vector(d, rng);
      const double n = norm2(v);
      for (auto& x : v) x /= n;
      const double q = inner(v, a * std::span<const Complex>(v)).real();
      EXPECT_LE(q, top + 1e-9);
      best = std::max(best, q);
    }
    if (d == 2) EXPECT_GT(best, top - 0.05);
  }
}

TEST(HermitianEigMax, InvariantUnderPermutation) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 2 + rep % 6;
    const ComplexMatrix a = random_hermitian(d, rng);
    const Permutation p = random_permutation(d, rng);
    EXPECT_NEAR(hermitian_eig_max(apply_permutation(p, a)).value, hermitian_eig_max(a).value, 1e-10);
  }
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(ComplexMatrix::identity(2), 1e-10));
  EXPECT_FALSE(is_psd(ComplexMatrix::diagonal(std::vector<double>{1.0, -0.5})));
  const ComplexMatrix m = ComplexMatrix::from_rows({{-1, 1}, {1, -1}});
  EXPECT_FALSE(is_psd(m));
  EXPECT_NEAR(hermitian_eig(m).min_value(), -2.0, 1e-14);
}

TEST(IsPsd, AgreesWithSignPatternOfCharacteristicPolynomial) {
  // A real-rooted polynomial has only nonnegative roots iff its elementary
  // symmetric coefficients are all nonnegative.
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    ComplexMatrix a = random_hermitian(3, rng);
    for (std::size_t i = 0; i < 3; ++i) a(i, i) += 1.5;
    const double min_eig = hermitian_eig(a).min_value();
    if (std::abs(min_eig) < 1e-6) continue;
    const auto e = char_poly_3x3(a);
    const bool oracle = e[0] >= 0.0 && e[1] >= 0.0 && e[2] >= 0.0;
    EXPECT_EQ(is_psd(a, 0.0), oracle);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(ApplyPermutation, Examples) {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = random_hermitian(4, rng);
  EXPECT_EQ(apply_permutation(Permutation::identity(4), a), a);

  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<double>{0.25, 0.75});
  EXPECT_EQ(apply_permutation(Permutation::transposition(2, 0, 1), d),
            ComplexMatrix::diagonal(std::vector<double>{0.75, 0.25}));

  ComplexMatrix rho2 = ComplexMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}});
  rho2 *= 0.5;
  ComplexMatrix expected = ComplexMatrix::from_rows({{0, 0, 0}, {0, 1, 1}, {0, 1, 1}});
  expected *= 0.5;
  EXPECT_EQ(apply_permutation(Permutation::transposition(3, 0, 2), rho2), expected);
}

TEST(ApplyPermutation, MatchesExplicitConjugation) {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_hermitian(5, rng);
  const Permutation p = random_permutation(5, rng);
  EXPECT_LE(max_abs_diff(apply_permutation(p, a), p.matrix() * a * p.matrix().adjoint()), 1e-15);
}

TEST(ApplyPermutation, Errors) {
  EXPECT_THROW(apply_permutation(Permutation::identity(3), ComplexMatrix::identity(2)), Error);
  try {
    Permutation({0, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPermutation);
  }
}

TEST(ComplexMatrix, RejectsZeroDimensionAndRaggedRows) {
  EXPECT_THROW(ComplexMatrix(0), Error);
  EXPECT_THROW(ComplexMatrix::from_rows({{1, 2}, {3}}), Error);
}
