#include "groth/factorizations.hpp"

#include <algorithm>
#include <cmath>

#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/sdp.hpp"
#include "groth/torus.hpp"

namespace groth {

namespace {

void require_nonzero(const DenseMatrix& x, const char* what) {
  if (x.empty() || is_zero(x)) throw Error(ErrorCode::zero_matrix, std::string(what) + ": zero matrix");
  if (!x.all_finite()) throw Error(ErrorCode::non_finite, std::string(what) + ": non-finite entry");
}

RVector unit_sqrt(const RVector& v) {
  double s = 0.0;
  for (double a : v) s += std::max(0.0, a);
  RVector out(v.size(), 0.0);
  if (s <= 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(std::max(0.0, v[i]) / s);
  return out;
}

}  // namespace

double max_column_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, norm2(a.col(j)));
  return best;
}

CbBFactorization cbb_factorization(const DenseMatrix& x, const Tolerances& tol) {
  require_nonzero(x, "cbb_factorization");
  const SdpSolution s = solve_two_sided_scaling(x, ScalingMode::cbb, tol);
  CbBFactorization f;
  f.eta = unit_sqrt(s.diag_left);
  f.xi = unit_sqrt(s.diag_right);
  f.B = scale_rows_cols(x, pseudo_inverse(f.eta), pseudo_inverse(f.xi));
  f.value = certified_scaling_upper(x, s.diag_left, s.diag_right);
  return f;
}

CbfVector cbf_vector(const DenseMatrix& x, const Tolerances& tol) {
  require_nonzero(x, "cbf_vector");
  const DenseMatrix p = hermitian_part(x.adjoint() * x);
  const SdpSolution s = solve_diag_dominance(p, tol);
  CbfVector out;
  out.xi = unit_sqrt(s.diag_left);
  const RVector ones(x.rows(), 1.0);
  out.Z = scale_rows_cols(x, ones, pseudo_inverse(out.xi));
  out.value = std::sqrt(certified_diag_upper(p, s.diag_left));
  return out;
}

SchurFactorization schur_factorization(const DenseMatrix& x, const Tolerances& tol) {
  require_nonzero(x, "schur_factorization");
  const std::size_t m = x.rows(), n = x.cols();
  const SdpSolution s = solve_two_sided_scaling(x, ScalingMode::schur, tol);
  const DenseMatrix block = hermitian_part(s.primal_block);
  const HermitianEig e = hermitian_eig(block, tol);
  const double top = std::max(0.0, e.eigenvalues.back());

  // Gram factor G = Lambda^{1/2} V*, rows with negligible eigenvalues dropped.
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < e.eigenvalues.size(); ++k)
    if (e.eigenvalues[k] > tol.rank_cut * top) keep.push_back(k);
  DenseMatrix g(keep.size(), m + n);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const double w = std::sqrt(e.eigenvalues[keep[r]]);
    for (std::size_t c = 0; c < m + n; ++c) g(r, c) = w * std::conj(e.eigenvectors(c, keep[r]));
  }
  // Row phases are free; make the leading column of L real non-negative.
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::size_t c0 = 0;
    while (c0 + 1 < m && std::abs(g(r, c0)) < 1e-12) ++c0;
    const cplx rot = std::conj(phase(g(r, c0)));
    for (std::size_t c = 0; c < m + n; ++c) g(r, c) *= rot;
  }
  SchurFactorization f;
  f.L = g.block(0, 0, g.rows(), m);
  f.R = g.block(0, m, g.rows(), n);
  f.value = max_column_norm(f.L) * max_column_norm(f.R);
  return f;
}

FactSplit fact_split(const DenseMatrix& x, const Tolerances& tol) {
  FactSplit f;
  f.cbb = cbb_factorization(x, tol);
  const PolarDecomposition pd = polar(f.cbb.B, tol);
  f.W = pd.W;
  f.P = pd.P;
  const DenseMatrix root = psd_sqrt(pd.P, tol);
  const RVector ones_n(x.cols(), 1.0);
  f.C = scale_rows_cols(root, ones_n, f.cbb.xi);
  f.D = scale_rows_cols(pd.W * root, f.cbb.eta, ones_n);
  return f;
}

DualityWitness duality_witness(const DenseMatrix& x, DualityPair pair, const Tolerances& tol) {
  require_nonzero(x, "duality_witness");
  DualityWitness w;
  const NormBracket b = norm(x, pair == DualityPair::cbb_s ? NormKind::cbB : NormKind::T, {}, tol);
  if (b.status != BracketStatus::ok || b.matrix.empty())
    throw Error(ErrorCode::non_convergence, "duality_witness: solver did not certify the norm");
  w.Y = b.matrix;
  w.pairing = inner(w.Y, x).real();
  w.value = b.upper;
  return w;
}

}  // namespace groth
