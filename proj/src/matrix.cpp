#include "groth/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "groth/errors.hpp"

namespace groth {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::not_psd: return "not_psd";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::zero_matrix: return "zero_matrix";
    case ErrorCode::domain: return "domain";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension, "matrix shapes differ");
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw Error(ErrorCode::dimension, "entry count does not match " +
                                          std::to_string(rows) + "x" + std::to_string(cols));
  if (!all_finite()) throw Error(ErrorCode::non_finite, "matrix has NaN or Inf entries");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::dimension, "ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorCode::non_finite, "matrix has NaN or Inf entries");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const cplx> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::outer(std::span<const cplx> a, std::span<const cplx> b) {
  DenseMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

DenseMatrix DenseMatrix::column(std::span<const cplx> a) {
  return DenseMatrix(a.size(), 1, std::vector<cplx>(a.begin(), a.end()));
}

CVector DenseMatrix::col(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CVector DenseMatrix::row(std::size_t i) const {
  return CVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

CVector DenseMatrix::diag() const {
  CVector v(std::min(rows_, cols_));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(i, i);
  return v;
}

void DenseMatrix::set_col(std::size_t j, std::span<const cplx> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

DenseMatrix DenseMatrix::conj() const {
  DenseMatrix m = *this;
  for (auto& z : m.entries_) z = std::conj(z);
  return m;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::dimension, "block out of range");
  DenseMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw Error(ErrorCode::dimension, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }
DenseMatrix operator*(DenseMatrix a, cplx s) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::dimension, "inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const DenseMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::dimension, "vector length mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double hs_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (cplx z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

cplx trace(const DenseMatrix& a) {
  cplx s{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

cplx inner(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  cplx s{};
  for (std::size_t k = 0; k < a.entries().size(); ++k) s += std::conj(a.entries()[k]) * b.entries()[k];
  return s;
}

double hermitian_defect(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::dimension, "matrix is not square");
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

DenseMatrix hermitian_part(const DenseMatrix& a) {
  DenseMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

bool is_zero(const DenseMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](cplx z) { return z == cplx{}; });
}

bool is_nonnegative(const DenseMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](cplx z) { return z.imag() == 0.0 && z.real() >= 0.0; });
}

DenseMatrix scale_rows_cols(const DenseMatrix& x, std::span<const double> left,
                            std::span<const double> right) {
  if (left.size() != x.rows() || right.size() != x.cols())
    throw Error(ErrorCode::dimension, "scaling vector length mismatch");
  DenseMatrix y = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) *= left[i] * right[j];
  return y;
}

RVector pseudo_inverse(std::span<const double> v) {
  RVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] > 0.0 ? 1.0 / v[i] : 0.0;
  return r;
}

double norm1(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s += std::abs(z);
  return s;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

double norm_inf(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s = std::max(s, std::abs(z));
  return s;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

cplx phase(cplx z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : cplx{1.0, 0.0};
}

}  // namespace groth
