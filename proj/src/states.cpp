#include "cohfilt/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cohfilt/error.hpp"

namespace cohfilt {

DensityMatrix validate_density(const ComplexMatrix& m, const ToleranceProfile& tol) {
  if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "density matrix has NaN or Inf entries");

  const double defect = m.hermiticity_defect();
  if (!(defect <= tol.herm_tol)) {
    std::ostringstream msg;
    msg << "max |rho - rho^dagger| = " << defect << " exceeds " << tol.herm_tol;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }

  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace_tol) {
    std::ostringstream msg;
    msg << "trace " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i deviates from 1 by "
        << std::abs(tr - 1.0) << " > " << tol.trace_tol;
    throw Error(ErrorCode::TraceNotOne, msg.str());
  }

  ComplexMatrix h = m.hermitian_part();
  const double min_eig = hermitian_eig(h, {.herm_tol = tol.herm_tol}).min_value();
  if (min_eig < -tol.psd_tol) {
    std::ostringstream msg;
    msg << "min eigenvalue " << min_eig << " below -" << tol.psd_tol;
    throw Error(ErrorCode::NotPSD, msg.str());
  }
  return DensityMatrix(std::move(h));
}

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw Error(ErrorCode::InvalidDimension, "pure state needs at least one amplitude");
  const double n = norm2(amps_);
  if (!(std::abs(n - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg << "amplitude norm " << n << " is not 1";
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = norm2(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::NotNormalized, "cannot normalize zero vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(std::move(amplitudes));
}

DensityMatrix PureState::density() const { return validate_density(ComplexMatrix::outer(amps_)); }

DiagonalState::DiagonalState(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::InvalidDimension, "diagonal state needs at least one entry");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= -1e-12)) {
      std::ostringstream msg;
      msg << "probability " << i << " = " << probs_[i] << " is negative";
      throw Error(ErrorCode::NotPSD, msg.str());
    }
    probs_[i] = std::max(probs_[i], 0.0);
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum;
    throw Error(ErrorCode::TraceNotOne, msg.str());
  }
}

DensityMatrix DiagonalState::density() const {
  return validate_density(ComplexMatrix::diagonal(std::span<const double>(probs_)));
}

DiagonalState dephase(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) p[i] = rho(i, i).real();
  return DiagonalState(std::move(p));
}

ComplexMatrix pinv_sqrt(const DiagonalState& dephased, double zero_tol) {
  ComplexMatrix out(dephased.dim());
  for (std::size_t i = 0; i < dephased.dim(); ++i) {
    const double p = dephased.probs()[i];
    if (p > zero_tol) out(i, i) = 1.0 / std::sqrt(p);
  }
  return out;
}

PureState mcs(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidDimension, "maximally coherent state needs d >= 1");
  return PureState(ComplexVector(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi) {
  if (rho.dim() != phi.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dim " + std::to_string(rho.dim()) + " vs target dim " +
                                                  std::to_string(phi.dim()));
  }
  const ComplexVector r_phi = rho.matrix() * std::span<const Complex>(phi.amplitudes());
  const double f = inner(phi.amplitudes(), r_phi).real();
  return std::clamp(f, 0.0, 1.0);
}

std::size_t coherence_rank(const PureState& phi, double zero_tol) {
  return static_cast<std::size_t>(std::count_if(phi.amplitudes().begin(), phi.amplitudes().end(),
                                                [&](const Complex& a) { return std::norm(a) > zero_tol; }));
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j && std::abs(rho(i, j)) > tol) return false;
  return true;
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::mt19937_64& rng) {
  if (d == 0) throw Error(ErrorCode::InvalidDimension, "random state needs d >= 1");
  if (rank < 1 || rank > d) {
    throw Error(ErrorCode::InvalidRank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  }
  std::normal_distribution<double> gauss;
  std::vector<Complex> g(d * rank);
  for (auto& x : g) {
    const double re = gauss(rng);
    x = Complex(re, gauss(rng));
  }
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k) s += g[i * rank + k] * std::conj(g[j * rank + k]);
      m(i, j) = s;
    }
  m *= 1.0 / m.trace().real();
  return validate_density(m);
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(d, rank, rng);
}

PureState random_pure(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexVector amps(d);
  for (auto& a : amps) {
    const double re = gauss(rng);
    a = Complex(re, gauss(rng));
  }
  return PureState::normalized(std::move(amps));
}

DensityMatrix embed(const DensityMatrix& rho, std::size_t d, std::span<const std::size_t> indices) {
  if (indices.size() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "embedding needs one target index per source dimension");
  }
  std::vector<bool> used(d, false);
  for (auto idx : indices) {
    if (idx >= d || used[idx]) throw Error(ErrorCode::InvalidProjector, "embedding indices must be distinct and < d");
    used[idx] = true;
  }
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) m(indices[i], indices[j]) = rho(i, j);
  return validate_density(m);
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p) {
  return validate_density(p * a.matrix() + (1.0 - p) * b.matrix());
}

DensityMatrix rotate_phases(const DensityMatrix& rho, std::span<const double> phases) {
  if (phases.size() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "one phase per basis vector required");
  ComplexMatrix m(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) m(i, j) = std::polar(1.0, phases[i] - phases[j]) * rho(i, j);
  return validate_density(m);
}

}  // namespace cohfilt
