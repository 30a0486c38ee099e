#pragma once

// Dense complex linear algebra for small Hermitian problems.
//
// Everything here works on square row-major matrices of std::complex<double>.
// The eigensolver is cyclic complex Jacobi: deterministic, and accurate for
// the degenerate spectra that show up constantly in this library (projectors,
// rank-one filtration matrices of pure states).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cohfilt {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class ComplexMatrix {
 public:
  // Zero matrix of size dim x dim. Throws InvalidDimension for dim == 0.
  explicit ComplexMatrix(std::size_t dim);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);
  static ComplexMatrix diagonal(std::span<const double> entries);
  // Rows must all have length rows.size(); throws DimensionMismatch otherwise.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  // max |A_ij - conj(A_ji)|
  double hermiticity_defect() const;
  // (A + A^dagger) / 2
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

// max_ij |a_ij - b_ij|; DimensionMismatch if sizes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// <u|v> (conjugate-linear in u)
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm2(std::span<const Complex> v);

struct EigOptions {
  double herm_tol = 1e-10;
  double eig_tol = 1e-11;
  int max_sweeps = 200;
};

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
};

// Eigenvalues in solver column order; column k of `vectors` pairs with values[k].
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors{1};

  ComplexVector column(std::size_t k) const;
  double min_value() const;
  double max_value() const;
  // Values sorted in descending order.
  std::vector<double> sorted_descending() const;
};

// Full eigendecomposition of a Hermitian matrix.
// Throws NotHermitian if max |A - A^dagger| > herm_tol, NoConvergence past max_sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix& a, const EigOptions& options = {});

// Largest eigenvalue and a unit eigenvector. Among eigenvalues tied with the
// maximum (within eig_tol * ||A||_F) the lowest column index wins.
EigenPair hermitian_eig_max(const ComplexMatrix& a, const EigOptions& options = {});

// min eigenvalue >= -tol
bool is_psd(const ComplexMatrix& a, double tol = 1e-10, const EigOptions& options = {});

// A bijection on {0, ..., n-1}; image(j) is where basis vector j is sent.
class Permutation {
 public:
  // Throws InvalidPermutation unless `image` is a bijection.
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t j) const { return image_[j]; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }
  Permutation inverse() const;
  // P with P|j> = |image(j)>
  ComplexMatrix matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

// P A P^dagger, i.e. result(image(i), image(j)) = A(i, j).
ComplexMatrix apply_permutation(const Permutation& perm, const ComplexMatrix& a);

}  // namespace cohfilt
