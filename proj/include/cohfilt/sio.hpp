#pragma once

// Strictly incoherent Kraus operators and stochastic SIO instruments.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cohfilt/linalg.hpp"
#include "cohfilt/states.hpp"

namespace cohfilt {

inline constexpr double kSioTol = 1e-12;

// At most one entry above sio_tol in every row and column, and K^dagger K <= I.
class SIOKraus {
 public:
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }

 private:
  explicit SIOKraus(ComplexMatrix mat) : mat_(std::move(mat)) {}
  friend SIOKraus validate_sio(const ComplexMatrix&, double, double);

  ComplexMatrix mat_;
};

// Throws NotStrictlyIncoherent (naming the row or column) or NotSubnormalized.
SIOKraus validate_sio(const ComplexMatrix& k, double sio_tol = kSioTol, double psd_tol = 1e-10);

// Nonempty list of SIO Kraus operators with sum K^dagger K <= I.
class SIOInstrument {
 public:
  // Throws InvalidDimension if empty, DimensionMismatch on mixed sizes,
  // NotSubnormalized if I - sum K^dagger K is not PSD within psd_tol.
  explicit SIOInstrument(std::vector<SIOKraus> kraus, double psd_tol = 1e-10);

  const std::vector<SIOKraus>& kraus() const noexcept { return kraus_; }
  std::size_t dim() const noexcept { return kraus_.front().dim(); }
  std::size_t size() const noexcept { return kraus_.size(); }
  // sum_mu K_mu^dagger K_mu
  ComplexMatrix effect() const;

 private:
  std::vector<SIOKraus> kraus_;
};

// K = P_perm * diag(diag)
struct PermDiagDecomposition {
  Permutation perm;
  ComplexVector diag;

  ComplexMatrix reassemble() const;
};

PermDiagDecomposition decompose(const SIOKraus& k, double sio_tol = kSioTol);

// Sum of |i><i| over a nonempty set of basis indices (0-based, sorted, unique).
class IncoherentProjector {
 public:
  // Throws InvalidProjector if empty, out of range, or repeated.
  IncoherentProjector(std::vector<std::size_t> indices, std::size_t dim);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t dim() const noexcept { return dim_; }
  ComplexMatrix matrix() const;

  friend bool operator==(const IncoherentProjector&, const IncoherentProjector&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t dim_;
};

struct InstrumentOutcome {
  DensityMatrix state;
  double probability;
};

// (sum K rho K^dagger / P, P). Throws ZeroProbability when P <= 1e-14.
InstrumentOutcome apply_instrument(const DensityMatrix& rho, const SIOInstrument& instrument);

struct Compression {
  ComplexMatrix block;
  double weight;
};

// The |S| x |S| block of rho on rows/columns S (unnormalized) and its trace.
// Throws ZeroWeight when the trace is <= 1e-14.
Compression projector_compress(const DensityMatrix& rho, const IncoherentProjector& projector);

// Random instrument: n_kraus random permutations times random diagonal
// profiles, rescaled so that lambda_max(sum K^dagger K) = 1 - 1e-6.
SIOInstrument random_instrument(std::size_t d, std::size_t n_kraus, std::mt19937_64& rng);
SIOInstrument random_instrument(std::size_t d, std::size_t n_kraus, std::uint64_t seed);

// Appends the diagonal Kraus sqrt(I - sum K^dagger K) so the result is trace
// preserving. The effect of an SIO instrument is always diagonal.
SIOInstrument complete(const SIOInstrument& instrument);

// {second_nu * first_mu}: apply `first`, then `second`.
SIOInstrument compose(const SIOInstrument& second, const SIOInstrument& first);

}  // namespace cohfilt
