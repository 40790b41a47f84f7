#include "groth/haagerup.hpp"

#include <algorithm>
#include <cmath>

#include "groth/errors.hpp"
#include "groth/factorizations.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"

namespace groth {

namespace {

constexpr int kPolishIters = 20000;

// u <- phase(P u) until the phases stop moving. Monotone for PSD P.
CVector polish(const DenseMatrix& p, CVector u) {
  for (int it = 0; it < kPolishIters; ++it) {
    const CVector pu = p * std::span<const cplx>(u);
    double move = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      const cplx v = phase(pu[j]);
      move = std::max(move, std::abs(v - u[j]));
      u[j] = v;
    }
    if (move <= 1e-15) break;
  }
  return u;
}

double quadratic_real(const DenseMatrix& p, std::span<const cplx> v) {
  const CVector pv = p * v;
  cplx s{};
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * pv[i];
  return s.real();
}

double product_scale(const DenseMatrix& p, const RVector& d) {
  double s = 1.0;
  for (std::size_t j = 0; j < d.size(); ++j) s *= std::max(std::abs(p(j, j).real()), std::abs(d[j]));
  return s;
}

DenseMatrix restrict_square(const DenseMatrix& a, const std::vector<std::size_t>& idx) {
  DenseMatrix r(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = a(idx[i], idx[j]);
  return r;
}

}  // namespace

HaagerupData haagerup_construction(const DenseMatrix& x, const TorusBudget& budget, const Tolerances& tol) {
  if (x.empty() || is_zero(x)) throw Error(ErrorCode::zero_matrix, "haagerup_construction: zero matrix");
  if (!x.all_finite()) throw Error(ErrorCode::non_finite, "haagerup_construction: non-finite entry");
  const std::size_t n = x.cols();
  // Work with ||X||_F of order one; everything is rescaled at the end.
  const double scale = hs_norm(x);
  const DenseMatrix xn = (1.0 / scale) * x;
  const DenseMatrix p = hermitian_part(xn.adjoint() * xn);

  HaagerupData d;
  CVector u;
  double relax_upper;
  if (is_nonnegative(x)) {
    u.assign(n, 1.0);
    d.u_certified = true;
    relax_upper = quadratic_real(p, u);
    d.f_norm_bracket.lower_certified = true;
    d.f_norm_bracket.real_witness = true;
  } else {
    const NormBracket q = max_quadratic_torus(p, budget, tol);
    u = polish(p, q.vectors.at(0).vector());
    d.u_certified = q.lower_certified;
    relax_upper = q.upper;
    d.f_norm_bracket.status = q.status;
    d.f_norm_bracket.lower_certified = q.lower_certified;
    d.f_norm_bracket.note = q.note;
  }
  d.u = TorusVector::from_vector(u);
  u = d.u.vector();

  const CVector pu = p * std::span<const cplx>(u);
  d.lambda.resize(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    d.lambda[j] = (std::conj(u[j]) * pu[j]).real();
    total += d.lambda[j];
  }
  for (double& l : d.lambda)
    if (l < 1e-12 * total) l = 0.0;
  total = 0.0;
  for (double l : d.lambda) total += l;

  const double f = std::sqrt(total);
  d.xi.resize(n);
  for (std::size_t j = 0; j < n; ++j) d.xi[j] = std::sqrt(d.lambda[j]) / f;
  d.Z = scale_rows_cols(xn, RVector(x.rows(), 1.0 / f), pseudo_inverse(d.xi));
  d.u_gap = relax_upper > 0.0 ? std::max(0.0, relax_upper - total) / relax_upper : 0.0;

  d.f_norm = f * scale;
  for (double& l : d.lambda) l *= scale * scale;
  d.f_norm_bracket.lower = d.f_norm;
  d.f_norm_bracket.upper = std::max(d.f_norm, std::sqrt(std::max(0.0, relax_upper)) * scale);
  d.f_norm_bracket.vectors = {d.u};
  d.f_norm_bracket.real_witness = d.u.is_real();
  return d;
}

HaagerupInequalityReport verify_haagerup_inequalities(const DenseMatrix& x, const HaagerupData& data,
                                                      int sample_count, std::uint64_t seed) {
  HaagerupInequalityReport r;
  if (!data.u_certified) {
    r.status = CheckStatus::skipped;
    r.note = "phase vector not certified optimal";
    return r;
  }
  const std::size_t n = x.cols();
  const CVector u = data.u.vector();
  double ftot = 0.0;
  for (double l : data.lambda) ftot += l;

  // lhs = ||X (u o a)||^2, rhs = sum |a_j|^2 lambda_j.
  auto sides = [&](const CVector& a) {
    CVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = u[j] * a[j];
    const double lhs = std::pow(norm2(x * std::span<const cplx>(v)), 2);
    double rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) rhs += std::norm(a[j]) * data.lambda[j];
    return std::pair{lhs, rhs};
  };
  auto slack_tol = [&](double lhs, double rhs) { return 1e-9 * (lhs + rhs + ftot); };

  const auto [l1, r1] = sides(CVector(n, 1.0));
  r.equality_defect = std::abs(l1 - r1);
  if (r.equality_defect > 1e-9 * ftot) ++r.violations;

  auto record = [&](const CVector& a, bool complex_dir) {
    const auto [lhs, rhs] = sides(a);
    const double slack = lhs - (complex_dir ? 2.0 : 1.0) * rhs;
    double& best = complex_dir ? r.max_slack_complex : r.max_slack_real;
    best = std::max(best, slack);
    if (slack > slack_tol(lhs, rhs)) ++r.violations;
  };
  for (std::size_t j = 0; j < n; ++j) {
    CVector a(n);
    a[j] = 1.0;
    record(a, false);
  }
  for (int k = 0; k < sample_count; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    CVector a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = rng.normal();
    for (std::size_t j = 0; j < n; ++j) b[j] = rng.complex_normal();
    record(a, false);
    record(b, true);
  }
  r.samples = sample_count;
  r.status = r.violations == 0 ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

NonnegClosedForms nonneg_closed_forms(const DenseMatrix& x) {
  if (x.empty()) throw Error(ErrorCode::dimension, "nonneg_closed_forms: empty matrix");
  if (!is_nonnegative(x)) throw Error(ErrorCode::domain, "nonneg_closed_forms: entries must be real and non-negative");
  NonnegClosedForms out;
  double rows = 0.0;
  for (std::size_t s = 0; s < x.rows(); ++s) {
    double r = 0.0;
    for (std::size_t t = 0; t < x.cols(); ++t) r += x(s, t).real();
    rows += r * r;
  }
  out.f_norm = out.cbf_norm = std::sqrt(rows);
  out.lambda.assign(x.cols(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t s = 0; s < x.rows(); ++s)
      for (std::size_t t = 0; t < x.cols(); ++t) out.lambda[j] += x(s, j).real() * x(s, t).real();
  return out;
}

CbbBoundChain cbb_bound_chain(const DenseMatrix& x, const Tolerances& tol) {
  CbbBoundChain c;
  const DenseMatrix p = hermitian_part(x.adjoint() * x);
  c.trace = trace(p).real();
  for (std::size_t s = 0; s < x.rows(); ++s) c.middle_sum += std::pow(norm1(x.row(s)), 2);
  double cols = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) cols += std::sqrt(std::max(0.0, p(j, j).real()));
  c.upper = cols * cols;
  if (is_zero(x)) {
    c.ordered = true;
    return c;
  }
  const NormBracket b = norm(p, NormKind::cbB, {}, tol);
  c.cbb_lower = b.lower;
  c.cbb_upper = b.upper;
  const double slack = 1e-8 * c.upper;
  c.ordered = c.trace <= c.cbb_upper + slack && c.cbb_lower <= c.middle_sum + slack &&
              c.middle_sum <= c.upper + slack;
  c.equality = is_nonnegative(x) && std::abs(c.cbb_lower - c.middle_sum) <= 1e-6 * c.middle_sum &&
               std::abs(c.cbb_upper - c.middle_sum) <= 1e-6 * c.middle_sum;
  return c;
}

EigenDeterminantReport eigen_and_determinant_checks(const DenseMatrix& x, const HaagerupData& data,
                                                    const Tolerances& tol) {
  EigenDeterminantReport r;
  const std::size_t n = x.cols();
  const DenseMatrix p = hermitian_part(x.adjoint() * x);
  std::vector<std::size_t> sup;
  for (std::size_t j = 0; j < n; ++j)
    if (data.xi[j] > 1e-9) sup.push_back(j);
  r.support = sup.size();
  if (sup.size() < n) {
    r.status = CheckStatus::partial;
    r.note = "some xi_j vanish; checks restricted to the support";
  }
  const DenseMatrix ps = restrict_square(p, sup);
  const CVector u = data.u.vector();
  double f2 = 0.0;
  for (double l : data.lambda) f2 += l;
  r.f_squared = f2;

  // M gamma with M = Delta(xi)^-1 P Delta(xi)^-1, gamma = u o xi.
  CVector gamma(sup.size()), w(sup.size());
  for (std::size_t k = 0; k < sup.size(); ++k) {
    gamma[k] = u[sup[k]] * data.xi[sup[k]];
    w[k] = u[sup[k]];  // Delta(xi)^-1 gamma
  }
  const CVector pw = ps * std::span<const cplx>(w);
  double res = 0.0;
  for (std::size_t k = 0; k < sup.size(); ++k)
    res += std::norm(pw[k] / data.xi[sup[k]] - f2 * gamma[k]);
  r.eigen_residual = std::sqrt(res);

  RVector lam(sup.size());
  for (std::size_t k = 0; k < sup.size(); ++k) lam[k] = data.lambda[sup[k]];
  r.det_haagerup = hermitian_det(ps - DenseMatrix::diagonal(std::span<const double>(lam)));
  r.scale_haagerup = product_scale(ps, lam);

  try {
    const CbBFactorization f = cbb_factorization(ps, tol);
    RVector dd(sup.size());
    for (std::size_t k = 0; k < sup.size(); ++k) dd[k] = f.value * f.eta[k] * f.eta[k];
    r.det_cbb = hermitian_det(ps - DenseMatrix::diagonal(std::span<const double>(dd)));
    r.scale_cbb = product_scale(ps, dd);
  } catch (const Error& e) {
    r.status = CheckStatus::fail;
    r.note = e.what();
    return r;
  }

  const bool ok = r.eigen_residual <= 1e-6 * f2 && std::abs(r.det_haagerup) <= 1e-6 * r.scale_haagerup &&
                  std::abs(r.det_cbb) <= 1e-6 * r.scale_cbb;
  if (!ok) r.status = CheckStatus::fail;
  if (!data.u_certified && r.note.empty()) r.note = "phase vector not certified optimal";
  return r;
}

}  // namespace groth
