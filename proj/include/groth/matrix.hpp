#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace groth {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Dense complex matrix stored row-major. Every entry is finite.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix diagonal(std::span<const cplx> d);
  /// The rank-one matrix a b^T (entries a_i b_j).
  static DenseMatrix outer(std::span<const cplx> a, std::span<const cplx> b);
  static DenseMatrix column(std::span<const cplx> a);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  CVector col(std::size_t j) const;
  CVector row(std::size_t i) const;
  CVector diag() const;
  void set_col(std::size_t j, std::span<const cplx> v);

  DenseMatrix adjoint() const;
  DenseMatrix transpose() const;
  DenseMatrix conj() const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b);

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(cplx s);

  bool all_finite() const;
  bool operator==(const DenseMatrix&) const = default;  // exact

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(cplx s, DenseMatrix a);
DenseMatrix operator*(DenseMatrix a, cplx s);
CVector operator*(const DenseMatrix& a, std::span<const cplx> x);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const DenseMatrix& a);
cplx trace(const DenseMatrix& a);
/// Tr(A* B), the Hilbert-Schmidt pairing.
cplx inner(const DenseMatrix& a, const DenseMatrix& b);
/// Largest entrywise deviation from Hermitian symmetry.
double hermitian_defect(const DenseMatrix& a);
DenseMatrix hermitian_part(const DenseMatrix& a);
bool is_zero(const DenseMatrix& a);
/// True when every entry is real and non-negative (imaginary parts exactly 0).
bool is_nonnegative(const DenseMatrix& a);

/// Delta(v) X Delta(w) without forming the diagonals.
DenseMatrix scale_rows_cols(const DenseMatrix& x, std::span<const double> left,
                            std::span<const double> right);
/// Entrywise inverse on the support, zero elsewhere.
RVector pseudo_inverse(std::span<const double> v);

double norm1(std::span<const cplx> v);
double norm2(std::span<const cplx> v);
double norm_inf(std::span<const cplx> v);
double norm2(std::span<const double> v);

/// Unit complex number in the direction of z; phase(0) = 1.
cplx phase(cplx z);

}  // namespace groth
