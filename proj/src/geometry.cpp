#include "groth/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "groth/errors.hpp"
#include "groth/factorizations.hpp"
#include "groth/linalg.hpp"
#include "groth/sdp.hpp"

namespace groth {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kTarget = 1e-12;  // stop once lambda_min >= -kTarget

const TorusBudget kStallSearch = [] {
  TorusBudget b;
  b.starts = 8;
  b.compute_upper = false;
  return b;
}();

DenseMatrix fourier_atom_average(std::size_t n, RAtomMixture& mix) {
  // Fourier atoms average to the identity.
  for (std::size_t k = 0; k < n; ++k) {
    CVector u(n);
    for (std::size_t j = 0; j < n; ++j)
      u[j] = std::polar(1.0, 2.0 * 3.141592653589793 * static_cast<double>(j * k % n) / static_cast<double>(n));
    mix.add(TorusVector::from_vector(u), 1.0 / static_cast<double>(n));
  }
  return mix.implied();
}

DenseMatrix clamp_psd(const DenseMatrix& a, const Tolerances& tol) {
  return hermitian_function(hermitian_part(a), [](double v) { return std::max(0.0, v); }, tol);
}

// Maximizes the concave g on [0, 1] by golden section; returns (gamma, g).
template <class F>
std::pair<double, double> golden_max(F g, int probes) {
  double lo = 0.0, hi = 1.0;
  double a = hi - kGolden * (hi - lo), b = lo + kGolden * (hi - lo);
  double ga = g(a), gb = g(b);
  for (int k = 2; k < probes; ++k) {
    if (ga < gb) {
      lo = a;
      a = b;
      ga = gb;
      b = lo + kGolden * (hi - lo);
      gb = g(b);
    } else {
      hi = b;
      b = a;
      gb = ga;
      a = hi - kGolden * (hi - lo);
      ga = g(a);
    }
  }
  std::pair<double, double> best = ga >= gb ? std::pair{a, ga} : std::pair{b, gb};
  const double g1 = g(1.0);
  if (g1 >= best.second) best = {1.0, g1};
  return best;
}

SparseHermitian dense_entries(const DenseMatrix& a, double s) {
  SparseHermitian e;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != cplx{}) e.push_back({i, j, s * a(i, j)});
  return e;
}

// Best weights over the current atoms: max t s.t. alpha sum w_k A_k - Q >= t I,
// w >= 0, sum w <= 1. Leftover mass is spread evenly (it can only help).
// The moment matrix of the PSD constraint is written to z.
bool reweight(RAtomMixture& mix, const DenseMatrix& q, double alpha, const Tolerances& tol, DenseMatrix& z) {
  const std::size_t n = q.rows(), k = mix.atoms.size();
  std::vector<DenseMatrix> atoms;
  for (const auto& t : mix.atoms) atoms.push_back(r_atom(t.vector()));

  ConicProblem prob;
  prob.b.assign(k + 1, 0.0);
  prob.b[k] = 1.0;
  PsdBlockData blk{-1.0 * q, {}};
  for (const auto& a : atoms) blk.a.push_back(dense_entries(a, -alpha));
  blk.a.push_back(dense_entries(DenseMatrix::identity(n), 1.0));
  prob.psd.push_back(std::move(blk));
  LinearBlockData lin;
  lin.c.assign(k + 1, 0.0);
  lin.c[k] = 1.0;
  lin.a.resize(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    lin.a[i].push_back({i, -1.0});
    lin.a[i].push_back({k, 1.0});
  }
  prob.linear = std::move(lin);
  RVector y0(k + 1, 0.5 / static_cast<double>(k));
  DenseMatrix avg(n, n);
  for (const auto& a : atoms) avg += (0.5 / static_cast<double>(k)) * a;
  y0[k] = min_eigenvalue(alpha * avg - q) - 1.0;
  prob.y_start = y0;

  Tolerances t = tol;
  t.sdp_rel_gap = 1e-9;
  ConicResult res;
  try {
    res = solve_conic(prob, t);
  } catch (const SdpNonConvergence& e) {
    res = e.last_iterate();
  }
  const RVector& y = res.y;
  if (!res.moment.empty()) z = res.moment[0];
  double sum = 0.0;
  RVector w(k);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = std::max(0.0, y[i]);
    sum += w[i];
  }
  if (!(sum > 0.0)) return false;
  if (sum > 1.0) {
    for (double& v : w) v /= sum;
  } else {
    for (double& v : w) v += (1.0 - sum) / static_cast<double>(k);
  }
  RAtomMixture next;
  next.n = n;
  for (std::size_t i = 0; i < k; ++i)
    if (w[i] > 1e-12) next.add(mix.atoms[i], w[i]);
  double total = 0.0;
  for (double v : next.weights) total += v;
  for (double& v : next.weights) v /= total;
  mix = std::move(next);
  return true;
}

}  // namespace

DenseMatrix r_atom(std::span<const cplx> u) {
  const std::size_t n = u.size();
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = std::conj(u[i]) * u[j];
  return a;
}

DenseMatrix RAtomMixture::implied() const {
  DenseMatrix r(n, n);
  for (std::size_t k = 0; k < atoms.size(); ++k) r += weights[k] * r_atom(atoms[k].vector());
  return r;
}

void RAtomMixture::add(const TorusVector& u, double w) {
  const CVector v = u.vector();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const CVector a = atoms[k].vector();
    double d = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) d = std::max(d, std::abs(a[j] - v[j]));
    if (d <= 1e-6) {
      weights[k] += w;
      return;
    }
  }
  atoms.push_back(u);
  weights.push_back(w);
}

void require_elliptope(const DenseMatrix& q, const Tolerances& tol) {
  if (!q.is_square() || q.rows() == 0) throw Error(ErrorCode::dimension, "elliptope point must be square");
  if (!q.all_finite()) throw Error(ErrorCode::non_finite, "elliptope point has a non-finite entry");
  if (hermitian_defect(q) > 1e-8) throw Error(ErrorCode::domain, "elliptope point must be Hermitian");
  for (std::size_t i = 0; i < q.rows(); ++i)
    if (std::abs(q(i, i) - 1.0) > 1e-8) throw Error(ErrorCode::domain, "elliptope point needs a unit diagonal");
  if (min_eigenvalue(hermitian_part(q)) < -tol.psd_reject)
    throw Error(ErrorCode::domain, "elliptope point must be positive semidefinite");
}

GeoDecomposition decompose_geo(const DenseMatrix& q_in, double alpha, const GeoBudget& budget,
                               const Tolerances& tol) {
  require_elliptope(q_in, tol);
  if (!(alpha >= 1.0)) throw Error(ErrorCode::domain, "decompose_geo: alpha must be at least 1");
  const DenseMatrix q = hermitian_part(q_in);
  const std::size_t n = q.rows();

  GeoDecomposition out;
  out.alpha = alpha;
  out.R.n = n;
  DenseMatrix r;
  const HermitianEig qe = hermitian_eig(q, tol);
  if (qe.eigenvalues.back() >= static_cast<double>(n) - 1e-9) {
    // Rank one with unit diagonal: Q is itself an atom, R = Q is exact.
    CVector u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::conj(phase(qe.eigenvectors(j, n - 1)));
    out.R.add(TorusVector::from_vector(u), 1.0);
    r = out.R.implied();
  } else {
    r = fourier_atom_average(n, out.R);
  }
  double value = min_eigenvalue(alpha * r - q);
  out.history.push_back(value);
  int stalled = 0;
  int it = 0;
  for (; it < budget.max_iters && value < -kTarget; ++it) {
    const HermitianEig e = hermitian_eig(alpha * r - q, tol);
    // Closed-form oracle: |sum_j u_j v_j|^2 is maximal at u = conj(phase(v)).
    CVector u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::conj(phase(e.eigenvectors(j, 0)));
    const DenseMatrix a = r_atom(u);
    const auto [gamma, g] = golden_max(
        [&](double s) { return min_eigenvalue(alpha * ((1.0 - s) * r + s * a) - q); }, budget.line_probes);
    if (g > value) {
      for (double& w : out.R.weights) w *= 1.0 - gamma;
      out.R.add(TorusVector::from_vector(u), gamma);
      r = (1.0 - gamma) * r + gamma * a;
      value = g;
      out.history.push_back(value);
      stalled = 0;
    } else {
      // Still keep the atom around for the corrective step.
      out.R.add(TorusVector::from_vector(u), 0.0);
      ++stalled;
    }
    const bool due = budget.corrective_every > 0 && (it + 1) % budget.corrective_every == 0;
    if ((due || stalled >= 3) && out.R.atoms.size() > 1) {
      RAtomMixture trial = out.R;
      DenseMatrix z;
      if (reweight(trial, q, alpha, tol, z)) {
        const DenseMatrix rt = trial.implied();
        const double vt = min_eigenvalue(alpha * rt - q);
        if (vt > value) {
          out.R = std::move(trial);
          r = rt;
          value = vt;
          out.history.push_back(value);
        }
      }
      // The moment matrix Z is the working subgradient where lambda_min is
      // degenerate; atoms with large <Z, A(u)> = u* conj(Z) u join the pool.
      if (!z.empty()) {
        int added = 0;
        for (const CVector& v : quadratic_local_maxima(hermitian_part(z.conj()), kStallSearch)) {
          out.R.add(TorusVector::from_vector(v), 0.0);
          if (++added == 4) break;
        }
      }
      stalled = 0;
    }
  }
  // Drop atoms that never received weight.
  RAtomMixture kept;
  kept.n = n;
  for (std::size_t k = 0; k < out.R.atoms.size(); ++k)
    if (out.R.weights[k] > 0.0) kept.add(out.R.atoms[k], out.R.weights[k]);
  out.R = std::move(kept);
  r = out.R.implied();

  out.iterations = it;
  out.min_eig_achieved = min_eigenvalue(alpha * r - q);
  out.success = out.min_eig_achieved >= -budget.feas_tol;
  const DenseMatrix p = hermitian_part(alpha * r - q);
  out.P = out.min_eig_achieved >= 0.0 ? p : clamp_psd(p, tol);
  return out;
}

namespace {

// Writes c * s t^T with both vectors normalized to a leading phase of zero.
AtomMixtureV::Atom v_atom(const CVector& s, const CVector& t, cplx c) {
  return {TorusVector::from_vector(s), TorusVector::from_vector(t), c * phase(s[0]) * phase(t[0])};
}

void append_scaled(RAtomMixture& into, const RAtomMixture& from, double scale) {
  for (std::size_t k = 0; k < from.atoms.size(); ++k) into.add(from.atoms[k], scale * from.weights[k]);
}

void normalize(RAtomMixture& mix) {
  double s = 0.0;
  for (double w : mix.weights) s += w;
  if (s > 0.0)
    for (double& w : mix.weights) w /= s;
}

}  // namespace

Geo2Result decompose_geo2(const DenseMatrix& q_in, double alpha, int depth, const GeoBudget& budget,
                          const Tolerances& tol) {
  require_elliptope(q_in, tol);
  if (!(alpha > 1.0 && alpha < 2.0)) throw Error(ErrorCode::domain, "decompose_geo2: alpha must lie in (1, 2)");
  if (depth < 1) throw Error(ErrorCode::domain, "decompose_geo2: depth must be positive");
  const DenseMatrix q = hermitian_part(q_in);
  const std::size_t n = q.rows();

  Geo2Result out;
  out.alpha = alpha;
  out.R_plus.n = out.R_minus.n = n;
  DenseMatrix cur = q;
  double coeff = alpha;  // alpha (alpha - 1)^(k - 1)
  for (int k = 1; k <= depth; ++k) {
    GeoDecomposition d;
    try {
      d = decompose_geo(cur, alpha, budget, tol);
    } catch (const Error&) {
      out.failure_depth = k;
      break;
    }
    append_scaled(k % 2 == 1 ? out.R_plus : out.R_minus, d.R, coeff);
    out.depth_reached = k;
    if (!d.success) {
      out.failure_depth = k;
      break;
    }
    coeff *= alpha - 1.0;
    if (coeff * static_cast<double>(n) < 1e-12) break;  // remainder negligible
    // Next level: P / (alpha - 1), diagonal restored to exactly one.
    DenseMatrix next = d.P;
    RVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = 1.0 / std::sqrt(std::max(next(i, i).real(), 1e-300));
    next = scale_rows_cols(next, s, s);
    for (std::size_t i = 0; i < n; ++i) next(i, i) = 1.0;
    cur = hermitian_part(next);
  }
  if (out.R_minus.atoms.empty()) out.R_minus = out.R_plus;
  normalize(out.R_plus);
  normalize(out.R_minus);
  const DenseMatrix rec = (1.0 / (2.0 - alpha)) * out.R_plus.implied() -
                          ((alpha - 1.0) / (2.0 - alpha)) * out.R_minus.implied();
  out.residual = hs_norm(q - rec);
  out.success = out.failure_depth < 0;
  return out;
}

VMembership v_membership(const DenseMatrix& x, double alpha, const GeoBudget& budget, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  const SchurFactorization f = schur_factorization(x, tol);
  const double s_norm = norm(x, NormKind::S, {}, tol).upper;
  if (std::abs(s_norm - 1.0) > 1e-6) throw Error(ErrorCode::domain, "v_membership: X must have unit Schur norm");

  // Block Gram matrix [[L*L, L*R], [R*L, R*R]], diagonal padded to one.
  DenseMatrix g(f.L.rows(), m + n);
  g.set_block(0, 0, f.L);
  g.set_block(0, m, f.R);
  DenseMatrix q = hermitian_part(g.adjoint() * g);
  for (std::size_t i = 0; i < m + n; ++i) q(i, i) = 1.0;

  VMembership out;
  out.geo = decompose_geo2(q, alpha, 40, budget, tol);
  const double cp = 1.0 / (2.0 - alpha), cm = (alpha - 1.0) / (2.0 - alpha);

  // The (1,2) corner of conj(u) u^T with u = (s; t) is conj(s) t^T.
  AtomMixtureV geo_mix;
  geo_mix.rows = m;
  geo_mix.cols = n;
  auto corners = [&](const RAtomMixture& mix, double c) {
    for (std::size_t k = 0; k < mix.atoms.size(); ++k) {
      const CVector u = mix.atoms[k].vector();
      CVector s(m), t(n);
      for (std::size_t i = 0; i < m; ++i) s[i] = std::conj(u[i]);
      for (std::size_t j = 0; j < n; ++j) t[j] = u[m + j];
      geo_mix.atoms.push_back(v_atom(s, t, c * mix.weights[k]));
    }
  };
  corners(out.geo.R_plus, cp);
  corners(out.geo.R_minus, -cm);
  out.rho_geometric = geo_mix.gauge();

  // Polish: re-solve the weights over these atoms (and generated ones) by LP.
  const GaugeVResult lp = gauge_inf_inf(x, {}, tol, geo_mix.atoms);
  const double geo_res = hs_norm(x - geo_mix.implied());
  const double lp_res = hs_norm(x - lp.mixture.implied());
  if (lp_res <= std::max(geo_res, 1e-9) && lp.mixture.gauge() <= out.rho_geometric) {
    out.mixture = lp.mixture;
  } else {
    out.mixture = std::move(geo_mix);
  }
  out.rho = out.mixture.gauge();
  out.residual = hs_norm(x - out.mixture.implied());
  return out;
}

AlphaFeasibility alpha_feasibility(const DenseMatrix& q_in, double alpha, bool two_sided,
                                   const GeoBudget& budget, const Tolerances& tol) {
  AlphaFeasibility out;
  const GeoDecomposition d = decompose_geo(q_in, alpha, budget, tol);
  out.R1 = d.R;
  out.min_eig_achieved = d.min_eig_achieved;
  out.iterations = d.iterations;
  out.feasible = d.success;
  if (!two_sided) return out;
  if (!(alpha > 1.0)) throw Error(ErrorCode::domain, "alpha_feasibility: two-sided variant needs alpha > 1");

  // Minimize ||alpha R1 - (alpha - 1) R2 - Q||_HS^2 over R1, R2 in R_n.
  const DenseMatrix q = hermitian_part(q_in);
  const std::size_t n = q.rows();
  RAtomMixture r2;
  r2.n = n;
  DenseMatrix m2 = fourier_atom_average(n, r2);
  RAtomMixture r1 = d.R;
  DenseMatrix m1 = r1.implied();
  TorusBudget tb;
  tb.compute_upper = false;
  tb.grid_limit = 0;
  tb.starts = 8;
  auto best_atom = [&](const DenseMatrix& gsign) {
    // max Re <G, A(u)> = u* conj(G) u.
    return max_quadratic_torus(hermitian_part(gsign.conj()), tb, tol).vectors.at(0).vector();
  };
  DenseMatrix e = alpha * m1 - (alpha - 1.0) * m2 - q;
  int it = 0;
  for (; it < budget.max_iters && hs_norm(e) > budget.feas_tol; ++it) {
    const CVector u1 = best_atom(-1.0 * e), u2 = best_atom(e);
    const DenseMatrix a1 = r_atom(u1), a2 = r_atom(u2);
    const DenseMatrix delta = alpha * (a1 - m1) - (alpha - 1.0) * (a2 - m2);
    const double dd = std::pow(hs_norm(delta), 2);
    if (dd <= 0.0) break;
    const double gamma = std::clamp(-inner(e, delta).real() / dd, 0.0, 1.0);
    if (gamma <= 0.0) break;
    for (double& w : r1.weights) w *= 1.0 - gamma;
    for (double& w : r2.weights) w *= 1.0 - gamma;
    r1.add(TorusVector::from_vector(u1), gamma);
    r2.add(TorusVector::from_vector(u2), gamma);
    m1 = (1.0 - gamma) * m1 + gamma * a1;
    m2 = (1.0 - gamma) * m2 + gamma * a2;
    e = alpha * m1 - (alpha - 1.0) * m2 - q;
  }
  out.R1 = std::move(r1);
  out.R2 = std::move(r2);
  out.residual = hs_norm(e);
  out.min_eig_achieved = min_eigenvalue(hermitian_part(alpha * m1 - q));
  out.iterations += it;
  out.feasible = out.residual <= budget.feas_tol;
  return out;
}

}  // namespace groth
