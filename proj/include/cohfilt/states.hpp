#pragma once

// Quantum states in the fixed incoherent (computational) basis.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cohfilt/linalg.hpp"

namespace cohfilt {

struct ToleranceProfile {
  double herm_tol = 1e-10;
  double trace_tol = 1e-10;
  double psd_tol = 1e-10;
};

// Support threshold on diagonal entries (states have unit trace, so this is
// relative to the trace).
inline constexpr double kZeroTol = 1e-12;

// Hermitian, unit-trace, PSD matrix. Only obtainable through validate_density.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

 private:
  explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {}
  friend DensityMatrix validate_density(const ComplexMatrix&, const ToleranceProfile&);

  ComplexMatrix mat_;
};

// Throws NonFinite / NotHermitian / TraceNotOne / NotPSD with the offending magnitude.
// The stored matrix is the Hermitian part of `m`.
DensityMatrix validate_density(const ComplexMatrix& m, const ToleranceProfile& tol = {});

class PureState {
 public:
  // Throws NotNormalized unless | ||amplitudes|| - 1 | <= 1e-12, InvalidDimension if empty.
  explicit PureState(ComplexVector amplitudes);
  // Rescales to unit norm; throws NotNormalized for the zero vector.
  static PureState normalized(ComplexVector amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  DensityMatrix density() const;

 private:
  ComplexVector amps_;
};

class DiagonalState {
 public:
  // Entries >= -1e-12, sum within 1e-10 of 1; tiny negatives are clamped to 0.
  explicit DiagonalState(std::vector<double> probs);

  std::size_t dim() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  DensityMatrix density() const;

 private:
  std::vector<double> probs_;
};

DiagonalState dephase(const DensityMatrix& rho);

// Moore-Penrose inverse square root of the dephased state: diag(p_i^{-1/2})
// on entries above zero_tol, 0 elsewhere.
ComplexMatrix pinv_sqrt(const DiagonalState& dephased, double zero_tol = kZeroTol);

// Uniform superposition (1/sqrt d) sum_i |i>. Throws InvalidDimension for d == 0.
PureState mcs(std::size_t d);

// <phi|rho|phi>, clamped into [0, 1].
double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi);

// Number of amplitudes with |amp|^2 > zero_tol.
std::size_t coherence_rank(const PureState& phi, double zero_tol = kZeroTol);

// max_{i != j} |rho_ij| <= tol
bool is_incoherent(const DensityMatrix& rho, double tol = 1e-10);

// Ginibre-induced state G G^dagger / Tr(G G^dagger), G a d x rank matrix of
// i.i.d. standard complex Gaussians. Throws InvalidRank unless 1 <= rank <= d.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::mt19937_64& rng);
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);

// Random pure state (rank-one Ginibre).
PureState random_pure(std::size_t d, std::mt19937_64& rng);

// Places `rho` on the basis vectors `indices` of a d-dimensional space; every
// other row and column is exactly zero. Indices must be distinct and < d.
DensityMatrix embed(const DensityMatrix& rho, std::size_t d, std::span<const std::size_t> indices);

// Convex combination p * a + (1 - p) * b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p);

// D rho D^dagger for the diagonal unitary D = diag(exp(i phases)).
DensityMatrix rotate_phases(const DensityMatrix& rho, std::span<const double> phases);

}  // namespace cohfilt
