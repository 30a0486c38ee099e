#include "cohfilt/sio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cohfilt/error.hpp"

namespace cohfilt {

namespace {

void require_subnormalized(const ComplexMatrix& effect, double psd_tol, const char* what) {
  const ComplexMatrix gap = ComplexMatrix::identity(effect.dim()) - effect;
  const double min_eig = hermitian_eig(gap).min_value();
  if (min_eig < -psd_tol) {
    std::ostringstream msg;
    msg << what << ": I - sum K^dagger K has eigenvalue " << min_eig;
    throw Error(ErrorCode::NotSubnormalized, msg.str());
  }
}

}  // namespace

SIOKraus validate_sio(const ComplexMatrix& k, double sio_tol, double psd_tol) {
  if (!k.all_finite()) throw Error(ErrorCode::NonFinite, "Kraus operator has NaN or Inf entries");
  const std::size_t d = k.dim();
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t in_row = 0, in_col = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (std::abs(k(i, j)) > sio_tol) ++in_row;
      if (std::abs(k(j, i)) > sio_tol) ++in_col;
    }
    if (in_row > 1) {
      throw Error(ErrorCode::NotStrictlyIncoherent,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(in_row) + " nonzero entries");
    }
    if (in_col > 1) {
      throw Error(ErrorCode::NotStrictlyIncoherent,
                  "column " + std::to_string(i + 1) + " has " + std::to_string(in_col) + " nonzero entries");
    }
  }
  require_subnormalized(k.adjoint() * k, psd_tol, "single Kraus operator");
  return SIOKraus(k);
}

SIOInstrument::SIOInstrument(std::vector<SIOKraus> kraus, double psd_tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidDimension, "instrument needs at least one Kraus operator");
  for (const auto& k : kraus_) {
    if (k.dim() != kraus_.front().dim()) throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in size");
  }
  require_subnormalized(effect(), psd_tol, "instrument");
}

ComplexMatrix SIOInstrument::effect() const {
  ComplexMatrix e(dim());
  for (const auto& k : kraus_) e += k.matrix().adjoint() * k.matrix();
  return e;
}

ComplexMatrix PermDiagDecomposition::reassemble() const {
  return perm.matrix() * ComplexMatrix::diagonal(std::span<const Complex>(diag));
}

PermDiagDecomposition decompose(const SIOKraus& kraus, double sio_tol) {
  const ComplexMatrix& k = kraus.matrix();
  const std::size_t d = k.dim();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> image(d, unset);
  std::vector<bool> row_used(d, false);
  ComplexVector diag(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(k(i, j)) > sio_tol) {
        image[j] = i;
        row_used[i] = true;
        diag[j] = k(i, j);
        break;
      }
    }
  }
  // Zero columns take the unused rows in ascending order.
  std::size_t next_row = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (image[j] != unset) continue;
    while (row_used[next_row]) ++next_row;
    image[j] = next_row;
    row_used[next_row] = true;
  }
  return {Permutation(std::move(image)), std::move(diag)};
}

IncoherentProjector::IncoherentProjector(std::vector<std::size_t> indices, std::size_t dim)
    : indices_(std::move(indices)), dim_(dim) {
  if (indices_.empty()) throw Error(ErrorCode::InvalidProjector, "projector index set is empty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(ErrorCode::InvalidProjector, "projector index set has repeats");
  }
  if (indices_.back() >= dim_) {
    throw Error(ErrorCode::InvalidProjector,
                "index " + std::to_string(indices_.back()) + " out of range for dim " + std::to_string(dim_));
  }
}

ComplexMatrix IncoherentProjector::matrix() const {
  ComplexMatrix p(dim_);
  for (auto i : indices_) p(i, i) = 1.0;
  return p;
}

InstrumentOutcome apply_instrument(const DensityMatrix& rho, const SIOInstrument& instrument) {
  if (rho.dim() != instrument.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dim " + std::to_string(rho.dim()) + " vs instrument dim " +
                                                  std::to_string(instrument.dim()));
  }
  ComplexMatrix out(rho.dim());
  for (const auto& k : instrument.kraus()) out += k.matrix() * rho.matrix() * k.matrix().adjoint();
  const double p = out.trace().real();
  if (!(p > 1e-14)) {
    std::ostringstream msg;
    msg << "instrument fires with probability " << p;
    throw Error(ErrorCode::ZeroProbability, msg.str());
  }
  out *= 1.0 / p;
  return {validate_density(out), p};
}

Compression projector_compress(const DensityMatrix& rho, const IncoherentProjector& projector) {
  if (rho.dim() != projector.dim()) throw Error(ErrorCode::DimensionMismatch, "projector and state dims differ");
  const auto& idx = projector.indices();
  ComplexMatrix block(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = rho(idx[a], idx[b]);
  const double weight = block.trace().real();
  if (!(weight > 1e-14)) {
    std::ostringstream msg;
    msg << "compression has trace " << weight;
    throw Error(ErrorCode::ZeroWeight, msg.str());
  }
  return {std::move(block), weight};
}

SIOInstrument random_instrument(std::size_t d, std::size_t n_kraus, std::mt19937_64& rng) {
  if (d == 0) throw Error(ErrorCode::InvalidDimension, "instrument needs d >= 1");
  if (n_kraus == 0) throw Error(ErrorCode::InvalidDimension, "instrument needs at least one Kraus operator");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  std::vector<ComplexMatrix> mats;
  std::vector<double> effect(d, 0.0);
  for (std::size_t mu = 0; mu < n_kraus; ++mu) {
    std::vector<std::size_t> image(d);
    std::iota(image.begin(), image.end(), std::size_t{0});
    std::shuffle(image.begin(), image.end(), rng);
    ComplexMatrix k(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double mag = unit(rng);
      k(image[j], j) = std::polar(mag, angle(rng));
      effect[j] += mag * mag;
    }
    mats.push_back(std::move(k));
  }
  const double top = *std::max_element(effect.begin(), effect.end());
  // The degenerate all-zero draw has probability zero; fall back to the identity.
  if (!(top > 0.0)) mats.front() = ComplexMatrix::identity(d);
  const double scale = std::sqrt((1.0 - 1e-6) / (top > 0.0 ? top : 1.0));

  std::vector<SIOKraus> kraus;
  for (auto& m : mats) kraus.push_back(validate_sio(Complex(scale) * m));
  return SIOInstrument(std::move(kraus));
}

SIOInstrument random_instrument(std::size_t d, std::size_t n_kraus, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_instrument(d, n_kraus, rng);
}

SIOInstrument complete(const SIOInstrument& instrument) {
  const ComplexMatrix e = instrument.effect();
  ComplexMatrix completion(instrument.dim());
  for (std::size_t i = 0; i < instrument.dim(); ++i) completion(i, i) = std::sqrt(std::max(0.0, 1.0 - e(i, i).real()));
  auto kraus = instrument.kraus();
  kraus.push_back(validate_sio(completion));
  return SIOInstrument(std::move(kraus));
}

SIOInstrument compose(const SIOInstrument& second, const SIOInstrument& first) {
  if (second.dim() != first.dim()) throw Error(ErrorCode::DimensionMismatch, "composed instruments differ in size");
  std::vector<SIOKraus> kraus;
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) kraus.push_back(validate_sio(b.matrix() * a.matrix()));
  return SIOInstrument(std::move(kraus));
}

}  // namespace cohfilt
