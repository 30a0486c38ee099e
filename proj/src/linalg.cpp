#include "cohfilt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohfilt/error.hpp"

namespace cohfilt {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": " << a.dim() << "x" << a.dim() << " vs " << b.dim() << "x" << b.dim();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void require_hermitian(const ComplexMatrix& a, double herm_tol) {
  const double defect = a.hermiticity_defect();
  if (!(defect <= herm_tol)) {
    std::ostringstream msg;
    msg << "max |A - A^dagger| = " << defect << " exceeds " << herm_tol;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidDimension, "matrix dimension must be >= 1");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has length " +
                                                    std::to_string(row.size()) + ", expected " +
                                                    std::to_string(rows.size()));
    }
    std::size_t j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

double ComplexMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "matrix product");
  const std::size_t d = lhs.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product: vector length " +
                                                  std::to_string(v.size()) + " vs dim " +
                                                  std::to_string(m.dim()));
  }
  ComplexVector out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "inner product of unequal lengths");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ComplexVector EigenDecomposition::column(std::size_t k) const {
  ComplexVector v(vectors.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
  return v;
}

double EigenDecomposition::min_value() const { return *std::min_element(values.begin(), values.end()); }
double EigenDecomposition::max_value() const { return *std::max_element(values.begin(), values.end()); }

std::vector<double> EigenDecomposition::sorted_descending() const {
  auto v = values;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& input, const EigOptions& options) {
  if (!input.all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  require_hermitian(input, options.herm_tol);

  const std::size_t d = input.dim();
  ComplexMatrix a = input.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const double scale = a.frobenius_norm();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double off_target = 2.0 * static_cast<double>(d) * eps * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  bool converged = scale == 0.0 || off_norm() <= off_target;
  for (int sweep = 0; !converged && sweep < options.max_sweeps; ++sweep) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        // Phase e^{-i phi} on q makes the (p,q) block real symmetric; a real
        // rotation then annihilates it.
        const Complex phase = a(p, q) / g;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * std::conj(phase);
        const Complex u_qq = c * std::conj(phase);

        for (std::size_t k = 0; k < d; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * u_pp + vkq * u_qp;
          v(k, q) = vkp * u_pq + vkq * u_qq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = off_norm() <= off_target;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "Jacobi did not converge in " << options.max_sweeps << " sweeps (off-diagonal norm "
        << off_norm() << ", target " << off_target << ")";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }

  EigenDecomposition out;
  out.values.resize(d);
  for (std::size_t k = 0; k < d; ++k) out.values[k] = a(k, k).real();
  out.vectors = std::move(v);
  return out;
}

EigenPair hermitian_eig_max(const ComplexMatrix& a, const EigOptions& options) {
  const EigenDecomposition eig = hermitian_eig(a, options);
  const double top = eig.max_value();
  const double tie = options.eig_tol * std::max(1.0, a.frobenius_norm());
  std::size_t best = 0;
  while (eig.values[best] < top - tie) ++best;
  EigenPair pair{eig.values[best], eig.column(best)};
  const double n = norm2(pair.vector);
  for (auto& x : pair.vector) x /= n;
  return pair;
}

bool is_psd(const ComplexMatrix& a, double tol, const EigOptions& options) {
  return hermitian_eig(a, options).min_value() >= -tol;
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t j = 0; j < image_.size(); ++j) {
    const std::size_t target = image_[j];
    if (target >= image_.size() || seen[target]) {
      throw Error(ErrorCode::InvalidPermutation,
                  "entry " + std::to_string(j) + " -> " + std::to_string(target) + " is not a bijection");
    }
    seen[target] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t j = 0; j < n; ++j) image[j] = j;
  return Permutation(std::move(image));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<std::size_t> image(n);
  for (std::size_t k = 0; k < n; ++k) image[k] = k;
  if (i >= n || j >= n) throw Error(ErrorCode::InvalidPermutation, "transposition index out of range");
  std::swap(image[i], image[j]);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t j = 0; j < image_.size(); ++j) inv[image_[j]] = j;
  return Permutation(std::move(inv));
}

ComplexMatrix Permutation::matrix() const {
  ComplexMatrix p(image_.size());
  for (std::size_t j = 0; j < image_.size(); ++j) p(image_[j], j) = 1.0;
  return p;
}

ComplexMatrix apply_permutation(const Permutation& perm, const ComplexMatrix& a) {
  if (perm.size() != a.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "permutation of size " + std::to_string(perm.size()) +
                                                  " applied to dim " + std::to_string(a.dim()));
  }
  ComplexMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(perm(i), perm(j)) = a(i, j);
  return out;
}

}  // namespace cohfilt
