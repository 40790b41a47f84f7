#include "groth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "groth/errors.hpp"

namespace groth {

namespace {

// Unitary J acting on a coordinate pair (p, q) such that J* H J is diagonal
// for the 2x2 Hermitian H = [[a, h], [conj(h), b]].
struct PairRotation {
  cplx pp, pq, qp, qq;
};

PairRotation pair_rotation(double a, cplx h, double b) {
  const double mag = std::abs(h);
  const cplx ph = std::conj(phase(h));  // e^{-i arg h}
  const double theta = (b - a) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * ph, c * ph};
}

void rotate_columns(DenseMatrix& m, std::size_t p, std::size_t q, const PairRotation& j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mp = m(k, p);
    const cplx mq = m(k, q);
    m(k, p) = mp * j.pp + mq * j.qp;
    m(k, q) = mp * j.pq + mq * j.qq;
  }
}

void rotate_rows_adjoint(DenseMatrix& m, std::size_t p, std::size_t q, const PairRotation& j) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mp = m(p, k);
    const cplx mq = m(q, k);
    m(p, k) = std::conj(j.pp) * mp + std::conj(j.qp) * mq;
    m(q, k) = std::conj(j.pq) * mp + std::conj(j.qq) * mq;
  }
}

double offdiag_mass(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void fix_column_phase(DenseMatrix& v, std::size_t j) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (std::abs(v(i, j)) > 1e-12) {
      const cplx rot = std::conj(phase(v(i, j)));
      for (std::size_t k = 0; k < v.rows(); ++k) v(k, j) *= rot;
      v(i, j) = std::abs(v(i, j));
      return;
    }
  }
}

// Fill columns [from, k) of an m x k matrix with unit vectors orthogonal to
// every earlier column (modified Gram-Schmidt against the standard basis).
void complete_orthonormal(DenseMatrix& u, std::size_t from) {
  std::size_t next_basis = 0;
  for (std::size_t j = from; j < u.cols(); ++j) {
    while (next_basis < u.rows()) {
      CVector v(u.rows());
      v[next_basis++] = 1.0;
      for (std::size_t c = 0; c < j; ++c) {
        cplx d{};
        for (std::size_t i = 0; i < u.rows(); ++i) d += std::conj(u(i, c)) * v[i];
        for (std::size_t i = 0; i < u.rows(); ++i) v[i] -= d * u(i, c);
      }
      const double nv = norm2(v);
      if (nv > 1e-6) {
        for (auto& z : v) z /= nv;
        u.set_col(j, v);
        break;
      }
    }
  }
}

Svd svd_tall(const DenseMatrix& x, const Tolerances& tol) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  DenseMatrix work = x;
  DenseMatrix v = DenseMatrix::identity(n);
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(work(k, p));
          beta += std::norm(work(k, q));
          gamma += std::conj(work(k, p)) * work(k, q);
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        const auto j = pair_rotation(alpha, gamma, beta);
        rotate_columns(work, p, q, j);
        rotate_columns(v, p, q, j);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  RVector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(work.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  Svd out{DenseMatrix(m, n), RVector(n), DenseMatrix(n, n)};
  const double cut = (n ? sigma[order[0]] : 0.0) * 1e-15;
  std::size_t nonzero = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = order[r];
    out.sigma[r] = sigma[j];
    out.V.set_col(r, v.col(j));
    if (sigma[j] > cut && sigma[j] > 0.0) {
      CVector u = work.col(j);
      for (auto& z : u) z /= sigma[j];
      out.U.set_col(r, u);
      ++nonzero;
    }
  }
  complete_orthonormal(out.U, nonzero);
  return out;
}

}  // namespace

HermitianEig hermitian_eig(const DenseMatrix& a_in, const Tolerances& tol) {
  if (!a_in.is_square()) throw Error(ErrorCode::dimension, "hermitian_eig needs a square matrix");
  const double scale = std::max(1.0, hs_norm(a_in));
  if (hermitian_defect(a_in) > tol.hermitian_check * scale)
    throw Error(ErrorCode::not_hermitian, "matrix is not Hermitian");
  const std::size_t n = a_in.rows();
  DenseMatrix a = hermitian_part(a_in);
  DenseMatrix v = DenseMatrix::identity(n);
  const double stop = tol.jacobi_offdiag * std::max(hs_norm(a), 1e-300);

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps && offdiag_mass(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const auto j = pair_rotation(a(p, p).real(), a(p, q), a(q, q).real());
        rotate_columns(a, p, q, j);
        rotate_rows_adjoint(a, p, q, j);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, j);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEig out{RVector(n), DenseMatrix(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    out.eigenvalues[r] = a(order[r], order[r]).real();
    out.eigenvectors.set_col(r, v.col(order[r]));
    fix_column_phase(out.eigenvectors, r);
  }
  return out;
}

Svd svd(const DenseMatrix& x, const Tolerances& tol) {
  if (x.rows() >= x.cols()) return svd_tall(x, tol);
  Svd t = svd_tall(x.adjoint(), tol);
  return Svd{std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

PolarDecomposition polar(const DenseMatrix& b, const Tolerances& tol) {
  const std::size_t m = b.rows(), n = b.cols();
  const Svd s = svd(b, tol);
  const std::size_t k = s.sigma.size();
  const double cut = (k ? s.sigma[0] : 0.0) * tol.rank_cut;
  PolarDecomposition out{DenseMatrix(m, n), DenseMatrix(n, n)};
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) out.P(i, j) += s.V(i, r) * s.sigma[r] * std::conj(s.V(j, r));
      if (s.sigma[r] > cut)
        for (std::size_t i = 0; i < m; ++i) out.W(i, j) += s.U(i, r) * std::conj(s.V(j, r));
    }
  }
  out.P = hermitian_part(out.P);
  return out;
}

DenseMatrix hermitian_function(const DenseMatrix& a, const std::function<double(double)>& f,
                               const Tolerances& tol) {
  const HermitianEig e = hermitian_eig(a, tol);
  const std::size_t n = a.rows();
  DenseMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const double fv = f(e.eigenvalues[r]);
    if (fv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += e.eigenvectors(i, r) * fv * std::conj(e.eigenvectors(j, r));
  }
  return hermitian_part(out);
}

DenseMatrix psd_sqrt(const DenseMatrix& p, const Tolerances& tol) {
  require_psd(p, tol);
  return hermitian_function(p, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, tol);
}

void require_psd(const DenseMatrix& p, const Tolerances& tol) {
  const double lo = min_eigenvalue(p);
  if (lo < -tol.psd_reject * std::max(1.0, hs_norm(p)))
    throw Error(ErrorCode::not_psd, "matrix is not positive semidefinite (min eigenvalue " +
                                        std::to_string(lo) + ")");
}

double op_norm(const DenseMatrix& x) {
  if (x.empty()) return 0.0;
  return svd(x).sigma.front();
}

double trace_norm(const DenseMatrix& x) {
  const RVector s = svd(x).sigma;
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double min_eigenvalue(const DenseMatrix& a) { return hermitian_eig(a).eigenvalues.front(); }

double hermitian_det(const DenseMatrix& a) {
  const RVector ev = hermitian_eig(a).eigenvalues;
  return std::accumulate(ev.begin(), ev.end(), 1.0, std::multiplies<>());
}

}  // namespace groth
