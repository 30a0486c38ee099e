#pragma once

// Brute-force checks of the filtration optimum that avoid the eigenvalue formula.

#include <cstddef>
#include <cstdint>
#include <span>

#include "cohfilt/linalg.hpp"
#include "cohfilt/states.hpp"

namespace cohfilt {

struct OracleResult {
  double best_fidelity;
  ComplexVector best_kraus_diag;
  std::size_t samples;
  std::uint64_t seed;
};

// Fidelity of K rho K^dagger / Tr(...) with psi_d for K = diag(a), evaluated
// as sum_ij a_i rho_ij conj(a_j) / (d sum_j |a_j|^2 rho_jj).
// Throws DegenerateKraus when sum_j |a_j|^2 rho_jj <= 1e-14.
double direct_kraus_fidelity(const DensityMatrix& rho, std::span<const Complex> a);

// Same quantity through the Rayleigh quotient <phi|B|phi> / d with
// phi = Delta rho^{1/2} conj(a) / ||.||.
double rayleigh_fidelity(const DensityMatrix& rho, std::span<const Complex> a);

// Builds K = P_perm diag(a) explicitly and measures the post-selected state's
// fidelity with psi_d. Permutations fix psi_d, so this equals the diagonal case.
double permuted_kraus_fidelity(const DensityMatrix& rho, const Permutation& perm, std::span<const Complex> a);

// Samples n_samples diagonal Kraus vectors with i.i.d. complex Gaussian
// entries and keeps the best. Work is split into fixed chunks with seeds
// derived from (seed, chunk index), so the result does not depend on
// `threads` (0 = hardware concurrency).
OracleResult random_search_fidelity(const DensityMatrix& rho, std::size_t n_samples, std::uint64_t seed,
                                    unsigned threads = 0);

// sum p / sum q <= max_mu p_mu / q_mu. Throws LengthMismatch, NonPositiveEntry.
bool ratio_inequality_check(std::span<const double> p, std::span<const double> q);

}  // namespace cohfilt
