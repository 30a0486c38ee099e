#include "cohfilt/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohfilt/error.hpp"

namespace cohfilt {

FiltrationMatrix filtration_matrix(const DensityMatrix& rho) {
  const DiagonalState dephased = dephase(rho);
  const ComplexMatrix scale = pinv_sqrt(dephased);
  const std::size_t d = rho.dim();
  ComplexMatrix b(d);
  std::size_t support = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (scale(i, i) != Complex{}) ++support;
    for (std::size_t j = 0; j < d; ++j) b(i, j) = scale(i, i).real() * rho(i, j) * scale(j, j).real();
  }
  // Unit diagonal on the support, exactly.
  for (std::size_t i = 0; i < d; ++i)
    if (scale(i, i) != Complex{}) b(i, i) = 1.0;
  return FiltrationMatrix(std::move(b), support);
}

double max_fidelity(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const double lambda = hermitian_eig_max(filtration_matrix(rho).matrix()).value;
  return std::clamp(lambda / d, 1.0 / d, 1.0);
}

namespace {

ComplexVector optimal_coefficients(const DensityMatrix& rho, const EigenPair& top) {
  const std::size_t d = rho.dim();
  ComplexVector a(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double p = rho(j, j).real();
    if (p > kZeroTol) a[j] = std::conj(top.vector[j]) / std::sqrt(p);
  }
  std::size_t lead = 0;
  for (std::size_t j = 1; j < d; ++j)
    if (std::abs(a[j]) > std::abs(a[lead]) * (1.0 + 1e-12)) lead = j;
  // The top eigenvector always has weight on the support, so a[lead] != 0.
  const Complex normalizer = std::conj(a[lead]) / (std::abs(a[lead]) * std::abs(a[lead]));
  for (auto& x : a) x *= normalizer;
  a[lead] = 1.0;
  return a;
}

}  // namespace

SIOKraus optimal_kraus(const DensityMatrix& rho) {
  const EigenPair top = hermitian_eig_max(filtration_matrix(rho).matrix());
  const ComplexVector a = optimal_coefficients(rho, top);
  return validate_sio(ComplexMatrix::diagonal(std::span<const Complex>(a)));
}

FiltrationResult filtrate(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const EigenPair top = hermitian_eig_max(filtration_matrix(rho).matrix());
  const ComplexVector a = optimal_coefficients(rho, top);
  SIOKraus kraus = validate_sio(ComplexMatrix::diagonal(std::span<const Complex>(a)));
  InstrumentOutcome outcome = apply_instrument(rho, SIOInstrument({kraus}));

  const double bound = std::clamp(top.value / d, 1.0 / d, 1.0);
  const double achieved = fidelity_with_pure(outcome.state, mcs(rho.dim()));
  if (std::abs(achieved - bound) > 1e-9) {
    std::ostringstream msg;
    msg << "optimal Kraus reaches fidelity " << achieved << " but the eigenvalue bound is " << bound;
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  return FiltrationResult{bound, top.value, std::move(kraus), outcome.probability, std::move(outcome.state)};
}

double qubit_closed_form(const DensityMatrix& rho, double zero_tol) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "qubit closed form needs d = 2");
  const double p0 = rho(0, 0).real();
  const double p1 = rho(1, 1).real();
  if (p0 <= zero_tol || p1 <= zero_tol) {
    throw Error(ErrorCode::DegenerateDiagonal, "a diagonal entry vanishes; the filtration fidelity is 1/2");
  }
  return 0.5 * (1.0 + std::abs(rho(0, 1)) / std::sqrt(p0 * p1));
}

}  // namespace cohfilt
