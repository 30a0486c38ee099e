#pragma once

// Coherence filtration: the best fidelity with the maximally coherent state
// reachable from rho by a stochastic SIO, and a Kraus operator that reaches it.
//
// With B = pinv_sqrt(Delta rho) * rho * pinv_sqrt(Delta rho), the optimum is
// lambda_max(B) / d, achieved by the single diagonal Kraus operator
// a_j = conj(c_j) / sqrt(rho_jj) built from a top eigenvector c of B.

#include "cohfilt/linalg.hpp"
#include "cohfilt/sio.hpp"
#include "cohfilt/states.hpp"

namespace cohfilt {

// Hermitian PSD; diagonal is 1 on supp(Delta rho) and 0 off it.
class FiltrationMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  // Number of unit diagonal entries, equal to the trace.
  std::size_t support_size() const noexcept { return support_; }

 private:
  FiltrationMatrix(ComplexMatrix mat, std::size_t support) : mat_(std::move(mat)), support_(support) {}
  friend FiltrationMatrix filtration_matrix(const DensityMatrix&);

  ComplexMatrix mat_;
  std::size_t support_;
};

FiltrationMatrix filtration_matrix(const DensityMatrix& rho);

struct FiltrationResult {
  double max_fidelity;
  double lambda_max;
  SIOKraus optimal_kraus;
  double success_probability;
  DensityMatrix output_state;
};

// lambda_max(B) / d clamped into [1/d, 1].
double max_fidelity(const DensityMatrix& rho);

// Diagonal Kraus from the top eigenvector of B, with a_j = 0 off the support.
// Rescaled by a single complex factor so that the largest |a_j| is exactly 1
// and real positive; the fidelity it achieves is unaffected.
SIOKraus optimal_kraus(const DensityMatrix& rho);

// Applies optimal_kraus and cross-checks the achieved fidelity against the
// eigenvalue bound (tolerance 1e-9).
FiltrationResult filtrate(const DensityMatrix& rho);

// (1 + |rho_12| / sqrt(rho_11 rho_22)) / 2 for qubits. Throws
// DimensionMismatch unless d == 2, DegenerateDiagonal if a diagonal is <= zero_tol.
double qubit_closed_form(const DensityMatrix& rho, double zero_tol = kZeroTol);

}  // namespace cohfilt
