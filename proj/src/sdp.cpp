#include "groth/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "groth/linalg.hpp"

namespace groth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower-triangular L with L L* = A; false when A is not numerically PD.
bool cholesky(const DenseMatrix& a, DenseMatrix& l) {
  const std::size_t n = a.rows();
  l = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

DenseMatrix lower_inverse(const DenseMatrix& l) {
  const std::size_t n = l.rows();
  DenseMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s{};
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

DenseMatrix sym(const DenseMatrix& m) { return hermitian_part(m); }

double pair(const SparseHermitian& a, const DenseMatrix& m) {
  double s = 0.0;
  for (const auto& e : a) s += (e.value * m(e.j, e.i)).real();
  return s;
}

void add_scaled(DenseMatrix& m, const SparseHermitian& a, double scale) {
  for (const auto& e : a) m(e.i, e.j) += scale * e.value;
}

// Largest alpha with M + alpha * D still PSD, given M = L L*.
double max_step_psd(const DenseMatrix& l_inv, const DenseMatrix& d) {
  const DenseMatrix t = sym(l_inv * d * l_inv.adjoint());
  const double lo = hermitian_eig(t).eigenvalues.front();
  return lo < 0.0 ? -1.0 / lo : kInf;
}

double max_step_linear(const RVector& v, const RVector& dv) {
  double a = kInf;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
  return a;
}

double fro(const DenseMatrix& m) { return hs_norm(m); }

struct Direction {
  RVector dy;
  std::vector<DenseMatrix> dS, dZ;
  RVector ds, dz;
};

class InteriorPoint {
 public:
  InteriorPoint(const ConicProblem& p, const Tolerances& tol) : p_(p), tol_(tol) {
    nvars_ = p_.b.size();
    for (const auto& blk : p_.psd) {
      if (blk.a.size() != nvars_) throw Error(ErrorCode::dimension, "psd block variable count");
      total_dim_ += blk.c.rows();
    }
    if (p_.linear) {
      if (p_.linear->a.size() != nvars_) throw Error(ErrorCode::dimension, "linear block variable count");
      total_dim_ += p_.linear->c.size();
      lin_dense_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nvars_),
                                         static_cast<Eigen::Index>(p_.linear->c.size()));
      for (std::size_t k = 0; k < nvars_; ++k)
        for (const auto& [i, v] : p_.linear->a[k])
          lin_dense_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) += v;
    }
  }

  ConicResult run();

 private:
  void initialize();
  void slack_from_y(std::vector<DenseMatrix>& s, RVector& sl) const;
  void residuals();
  void build_schur_complement();
  Direction direction(double sigma_mu, const Direction* affine) const;
  void snapshot(ConicResult& r) const;

  const ConicProblem& p_;
  const Tolerances& tol_;
  std::size_t nvars_ = 0;
  std::size_t total_dim_ = 0;
  Eigen::MatrixXd lin_dense_;

  RVector y_;
  std::vector<DenseMatrix> s_, z_;
  RVector sl_, zl_;

  // per-iteration data
  std::vector<DenseMatrix> s_inv_, z_linv_, s_linv_;
  std::vector<DenseMatrix> rd_;
  RVector rd_lin_, rp_;
  double mu_ = 0.0;
  Eigen::LDLT<Eigen::MatrixXd> schur_;
};

void InteriorPoint::slack_from_y(std::vector<DenseMatrix>& s, RVector& sl) const {
  s.clear();
  for (const auto& blk : p_.psd) {
    DenseMatrix m = blk.c;
    for (std::size_t k = 0; k < nvars_; ++k)
      if (y_[k] != 0.0) add_scaled(m, blk.a[k], -y_[k]);
    s.push_back(sym(m));
  }
  sl.clear();
  if (p_.linear) {
    sl = p_.linear->c;
    for (std::size_t k = 0; k < nvars_; ++k)
      for (const auto& [i, v] : p_.linear->a[k]) sl[i] -= y_[k] * v;
  }
}

void InteriorPoint::initialize() {
  double cnorm = 0.0, anorm = 0.0;
  for (const auto& blk : p_.psd) {
    cnorm = std::max(cnorm, fro(blk.c));
    for (const auto& a : blk.a) {
      double s = 0.0;
      for (const auto& e : a) s += std::norm(e.value);
      anorm = std::max(anorm, std::sqrt(s));
    }
  }
  if (p_.linear) cnorm = std::max(cnorm, norm2(p_.linear->c));
  double bmax = 0.0;
  for (double v : p_.b) bmax = std::max(bmax, std::abs(v));
  const double n = static_cast<double>(std::max<std::size_t>(total_dim_, 1));
  const double z_scale = std::max({1.0, std::sqrt(n), std::sqrt(n) * (1.0 + bmax) / (1.0 + anorm)});
  const double s_scale = std::max({1.0, std::sqrt(n), cnorm, anorm});

  bool feasible_start = false;
  if (p_.y_start && p_.y_start->size() == nvars_) {
    y_ = *p_.y_start;
    slack_from_y(s_, sl_);
    feasible_start = true;
    DenseMatrix l;
    for (const auto& s : s_) feasible_start = feasible_start && cholesky(s, l);
    for (double v : sl_) feasible_start = feasible_start && v > 0.0;
  }
  if (!feasible_start) {
    y_.assign(nvars_, 0.0);
    s_.clear();
    for (const auto& blk : p_.psd) s_.push_back(s_scale * DenseMatrix::identity(blk.c.rows()));
    if (p_.linear) sl_.assign(p_.linear->c.size(), s_scale);
  }
  z_.clear();
  for (const auto& blk : p_.psd) z_.push_back(z_scale * DenseMatrix::identity(blk.c.rows()));
  if (p_.linear) zl_.assign(p_.linear->c.size(), z_scale);
}

void InteriorPoint::residuals() {
  rp_ = p_.b;
  for (std::size_t b = 0; b < p_.psd.size(); ++b)
    for (std::size_t k = 0; k < nvars_; ++k) rp_[k] -= pair(p_.psd[b].a[k], z_[b]);
  if (p_.linear)
    for (std::size_t k = 0; k < nvars_; ++k)
      for (const auto& [i, v] : p_.linear->a[k]) rp_[k] -= v * zl_[i];

  rd_.clear();
  for (std::size_t b = 0; b < p_.psd.size(); ++b) {
    DenseMatrix r = p_.psd[b].c - s_[b];
    for (std::size_t k = 0; k < nvars_; ++k)
      if (y_[k] != 0.0) add_scaled(r, p_.psd[b].a[k], -y_[k]);
    rd_.push_back(sym(r));
  }
  rd_lin_.clear();
  if (p_.linear) {
    rd_lin_ = p_.linear->c;
    for (std::size_t i = 0; i < rd_lin_.size(); ++i) rd_lin_[i] -= sl_[i];
    for (std::size_t k = 0; k < nvars_; ++k)
      for (const auto& [i, v] : p_.linear->a[k]) rd_lin_[i] -= y_[k] * v;
  }

  double xs = 0.0;
  for (std::size_t b = 0; b < z_.size(); ++b) xs += inner(z_[b], s_[b]).real();
  for (std::size_t i = 0; i < zl_.size(); ++i) xs += zl_[i] * sl_[i];
  mu_ = xs / static_cast<double>(std::max<std::size_t>(total_dim_, 1));
}

void InteriorPoint::build_schur_complement() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nvars_),
                                            static_cast<Eigen::Index>(nvars_));
  s_inv_.clear();
  s_linv_.clear();
  z_linv_.clear();
  for (std::size_t b = 0; b < p_.psd.size(); ++b) {
    DenseMatrix ls, lz;
    if (!cholesky(s_[b], ls) || !cholesky(z_[b], lz))
      throw Error(ErrorCode::non_convergence, "interior point iterate left the cone");
    const DenseMatrix ls_inv = lower_inverse(ls);
    s_linv_.push_back(ls_inv);
    z_linv_.push_back(lower_inverse(lz));
    s_inv_.push_back(sym(ls_inv.adjoint() * ls_inv));
    const DenseMatrix& zb = z_[b];
    const DenseMatrix& si = s_inv_.back();
    const auto& a = p_.psd[b].a;
    // M_kl = Re Tr(A_k Z A_l S^-1), evaluated entry by entry on the sparse A's.
    // Constraints with many entries get G_l = Z A_l S^-1 formed once.
    const std::size_t nb = zb.rows();
    std::vector<DenseMatrix> g(nvars_);
    for (std::size_t l = 0; l < nvars_; ++l) {
      if (a[l].size() <= nb) continue;
      g[l] = DenseMatrix(nb, nb);
      for (const auto& el : a[l])
        for (std::size_t p = 0; p < nb; ++p) {
          const cplx zp = zb(p, el.i) * el.value;
          if (zp == cplx{}) continue;
          for (std::size_t q = 0; q < nb; ++q) g[l](p, q) += zp * si(el.j, q);
        }
    }
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (a[k].empty()) continue;
      for (std::size_t l = k; l < nvars_; ++l) {
        if (a[l].empty()) continue;
        double s = 0.0;
        if (!g[l].empty()) {
          for (const auto& ek : a[k]) s += (ek.value * g[l](ek.j, ek.i)).real();
        } else {
          for (const auto& ek : a[k])
            for (const auto& el : a[l]) s += (ek.value * zb(ek.j, el.i) * el.value * si(el.j, ek.i)).real();
        }
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) += s;
        if (l != k) m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) += s;
      }
    }
  }
  if (p_.linear) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(zl_.size()));
    for (std::size_t i = 0; i < zl_.size(); ++i) d(static_cast<Eigen::Index>(i)) = zl_[i] / sl_[i];
    m += lin_dense_ * d.asDiagonal() * lin_dense_.transpose();
  }
  // Tiny diagonal regularization keeps LDLT stable near degenerate optima.
  const double reg = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
  m.diagonal().array() += reg;
  schur_.compute(m);
}

Direction InteriorPoint::direction(double sigma_mu, const Direction* affine) const {
  Direction d;
  std::vector<DenseMatrix> r_blocks;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(nvars_));
  for (std::size_t k = 0; k < nvars_; ++k) rhs(static_cast<Eigen::Index>(k)) = rp_[k];

  for (std::size_t b = 0; b < p_.psd.size(); ++b) {
    const DenseMatrix& si = s_inv_[b];
    DenseMatrix r = sigma_mu * si - z_[b];
    if (affine) r -= sym(affine->dZ[b] * affine->dS[b] * si);
    const DenseMatrix h = r - sym(z_[b] * rd_[b] * si);
    for (std::size_t k = 0; k < nvars_; ++k) rhs(static_cast<Eigen::Index>(k)) -= pair(p_.psd[b].a[k], h);
    r_blocks.push_back(std::move(r));
  }
  RVector r_lin;
  if (p_.linear) {
    r_lin.resize(zl_.size());
    Eigen::VectorXd h(static_cast<Eigen::Index>(zl_.size()));
    for (std::size_t i = 0; i < zl_.size(); ++i) {
      double r = sigma_mu / sl_[i] - zl_[i];
      if (affine) r -= affine->dz[i] * affine->ds[i] / sl_[i];
      r_lin[i] = r;
      h(static_cast<Eigen::Index>(i)) = r - zl_[i] * rd_lin_[i] / sl_[i];
    }
    rhs -= lin_dense_ * h;
  }

  const Eigen::VectorXd dy = schur_.solve(rhs);
  d.dy.assign(dy.data(), dy.data() + dy.size());

  for (std::size_t b = 0; b < p_.psd.size(); ++b) {
    DenseMatrix ds = rd_[b];
    for (std::size_t k = 0; k < nvars_; ++k)
      if (d.dy[k] != 0.0) add_scaled(ds, p_.psd[b].a[k], -d.dy[k]);
    ds = sym(ds);
    DenseMatrix dz = sym(r_blocks[b] - sym(z_[b] * ds * s_inv_[b]));
    d.dS.push_back(std::move(ds));
    d.dZ.push_back(std::move(dz));
  }
  if (p_.linear) {
    d.ds = rd_lin_;
    for (std::size_t k = 0; k < nvars_; ++k)
      for (const auto& [i, v] : p_.linear->a[k]) d.ds[i] -= d.dy[k] * v;
    d.dz.resize(zl_.size());
    for (std::size_t i = 0; i < zl_.size(); ++i) d.dz[i] = r_lin[i] - zl_[i] * d.ds[i] / sl_[i];
  }
  return d;
}

void InteriorPoint::snapshot(ConicResult& r) const {
  r.y = y_;
  r.moment = z_;
  r.linear_moment = zl_;
  slack_from_y(r.slack, r.linear_slack);
  r.design_value = 0.0;
  for (std::size_t k = 0; k < nvars_; ++k) r.design_value += p_.b[k] * y_[k];
  r.moment_value = 0.0;
  for (std::size_t b = 0; b < p_.psd.size(); ++b) r.moment_value += inner(p_.psd[b].c, z_[b]).real();
  if (p_.linear)
    for (std::size_t i = 0; i < zl_.size(); ++i) r.moment_value += p_.linear->c[i] * zl_[i];
}

ConicResult InteriorPoint::run() {
  initialize();
  double bnorm = norm2(std::span<const double>(p_.b));
  double cnorm = 0.0;
  for (const auto& blk : p_.psd) cnorm += fro(blk.c);
  if (p_.linear) cnorm += norm2(std::span<const double>(p_.linear->c));

  ConicResult best;
  double best_score = kInf;
  const double target = std::min(tol_.sdp_rel_gap, 1e-11);
  int stall = 0;

  for (int it = 0; it <= tol_.sdp_max_iters; ++it) {
    residuals();
    double design = 0.0, moment = 0.0;
    for (std::size_t k = 0; k < nvars_; ++k) design += p_.b[k] * y_[k];
    for (std::size_t b = 0; b < p_.psd.size(); ++b) moment += inner(p_.psd[b].c, z_[b]).real();
    for (std::size_t i = 0; i < zl_.size(); ++i) moment += p_.linear->c[i] * zl_[i];
    const double scale = 1.0 + std::abs(design) + std::abs(moment);
    const double gap = std::max(std::abs(moment - design), mu_ * static_cast<double>(total_dim_)) / scale;
    double dinf = 0.0;
    for (const auto& r : rd_) dinf += fro(r);
    dinf += norm2(std::span<const double>(rd_lin_));
    dinf /= (1.0 + cnorm);
    const double pinf = norm2(std::span<const double>(rp_)) / (1.0 + bnorm);
    const double score = std::max({gap, pinf, dinf});

    if (score < best_score * 0.999) {
      best_score = score;
      snapshot(best);
      best.rel_gap = gap;
      best.design_infeasibility = dinf;
      best.moment_infeasibility = pinf;
      best.iterations = it;
      stall = 0;
    } else if (++stall > 8) {
      break;
    }
    if (score <= target || it == tol_.sdp_max_iters) break;

    try {
      build_schur_complement();
    } catch (const Error&) {
      break;
    }
    if (schur_.info() != Eigen::Success) break;

    const Direction aff = direction(0.0, nullptr);
    double ap = 1.0, ad = 1.0;
    for (std::size_t b = 0; b < z_.size(); ++b) {
      ap = std::min(ap, max_step_psd(z_linv_[b], aff.dZ[b]));
      ad = std::min(ad, max_step_psd(s_linv_[b], aff.dS[b]));
    }
    if (p_.linear) {
      ap = std::min(ap, max_step_linear(zl_, aff.dz));
      ad = std::min(ad, max_step_linear(sl_, aff.ds));
    }
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < z_.size(); ++b)
      mu_aff += inner(z_[b] + ap * aff.dZ[b], s_[b] + ad * aff.dS[b]).real();
    for (std::size_t i = 0; i < zl_.size(); ++i)
      mu_aff += (zl_[i] + ap * aff.dz[i]) * (sl_[i] + ad * aff.ds[i]);
    mu_aff /= static_cast<double>(std::max<std::size_t>(total_dim_, 1));
    const double ratio = std::clamp(mu_aff / mu_, 0.0, 1.0);
    const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

    const Direction d = direction(sigma * mu_, &aff);
    ap = kInf;
    ad = kInf;
    for (std::size_t b = 0; b < z_.size(); ++b) {
      ap = std::min(ap, max_step_psd(z_linv_[b], d.dZ[b]));
      ad = std::min(ad, max_step_psd(s_linv_[b], d.dS[b]));
    }
    if (p_.linear) {
      ap = std::min(ap, max_step_linear(zl_, d.dz));
      ad = std::min(ad, max_step_linear(sl_, d.ds));
    }
    const double gamma = 0.95;
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (ap < 1e-14 && ad < 1e-14) break;

    for (std::size_t b = 0; b < z_.size(); ++b) {
      z_[b] = sym(z_[b] + ap * d.dZ[b]);
      s_[b] = sym(s_[b] + ad * d.dS[b]);
    }
    for (std::size_t i = 0; i < zl_.size(); ++i) {
      zl_[i] += ap * d.dz[i];
      sl_[i] += ad * d.ds[i];
    }
    for (std::size_t k = 0; k < nvars_; ++k) y_[k] += ad * d.dy[k];
  }

  best.converged = best.rel_gap <= tol_.sdp_rel_gap && best.design_infeasibility <= 1e-8 &&
                   best.moment_infeasibility <= 1e-8;
  return best;
}

}  // namespace

ConicResult solve_conic(const ConicProblem& problem, const Tolerances& tol) {
  InteriorPoint ip(problem, tol);
  ConicResult r = ip.run();
  if (!r.converged)
    throw SdpNonConvergence("interior point stopped at relative gap " + std::to_string(r.rel_gap), r);
  return r;
}

// ---------------------------------------------------------------------------
// Problem families
// ---------------------------------------------------------------------------

namespace {

SparseHermitian diag_unit(std::size_t i, double v) { return {{i, i, v}}; }

SparseHermitian offdiag_real(std::size_t i, std::size_t j, double v) {
  return {{i, j, v}, {j, i, v}};
}

SparseHermitian offdiag_imag(std::size_t i, std::size_t j, double v) {
  return {{i, j, cplx(0.0, v)}, {j, i, cplx(0.0, -v)}};
}

// D Z D with D = diag(1/sqrt(Z_kk)): exact unit diagonal, PSD preserved.
DenseMatrix unit_diagonal(const DenseMatrix& z) {
  const std::size_t n = z.rows();
  RVector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = z(i, i).real();
    d[i] = v > 0.0 ? 1.0 / std::sqrt(v) : 0.0;
  }
  DenseMatrix q = scale_rows_cols(z, d, d);
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  return hermitian_part(q);
}

struct Support {
  std::vector<std::size_t> rows, cols;
};

Support support_of(const DenseMatrix& x) {
  Support s;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    bool nz = false;
    for (std::size_t j = 0; j < x.cols(); ++j) nz = nz || x(i, j) != cplx{};
    if (nz) s.rows.push_back(i);
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    bool nz = false;
    for (std::size_t i = 0; i < x.rows(); ++i) nz = nz || x(i, j) != cplx{};
    if (nz) s.cols.push_back(j);
  }
  return s;
}

DenseMatrix restrict_to(const DenseMatrix& x, const Support& s) {
  DenseMatrix r(s.rows.size(), s.cols.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j) r(i, j) = x(s.rows[i], s.cols[j]);
  return r;
}

// Embeds an (|rows| + |cols|)-square block matrix back into (m + n) indices.
DenseMatrix embed_block(const DenseMatrix& sub, const Support& s, std::size_t m, std::size_t n,
                        double fill_diagonal) {
  std::vector<std::size_t> map;
  for (auto i : s.rows) map.push_back(i);
  for (auto j : s.cols) map.push_back(m + j);
  DenseMatrix full(m + n, m + n);
  for (std::size_t i = 0; i < m + n; ++i) full(i, i) = fill_diagonal;
  for (std::size_t a = 0; a < map.size(); ++a)
    for (std::size_t b = 0; b < map.size(); ++b) full(map[a], map[b]) = sub(a, b);
  return full;
}

DenseMatrix coupling_block(const DenseMatrix& x) {
  const std::size_t m = x.rows(), n = x.cols();
  DenseMatrix c(m + n, m + n);
  c.set_block(0, m, x);
  c.set_block(m, 0, x.adjoint());
  return c;
}

}  // namespace

SdpSolution solve_diag_dominance(const DenseMatrix& p_in, const Tolerances& tol) {
  if (!p_in.is_square()) throw Error(ErrorCode::dimension, "diagonal dominance needs a square matrix");
  const double herm_scale = std::max(1.0, hs_norm(p_in));
  if (hermitian_defect(p_in) > tol.hermitian_check * herm_scale)
    throw Error(ErrorCode::not_hermitian, "matrix is not Hermitian");
  require_psd(p_in, tol);
  const DenseMatrix p = hermitian_part(p_in);
  const std::size_t n = p.rows();

  SdpSolution out;
  if (is_zero(p)) {
    out.diag_left.assign(n, 0.0);
    out.dual_matrix = DenseMatrix::identity(n);
    out.primal_block = DenseMatrix(n, n);
    return out;
  }

  ConicProblem prob;
  prob.b.assign(n, -1.0);
  PsdBlockData blk{-1.0 * p, {}};
  for (std::size_t k = 0; k < n; ++k) blk.a.push_back(diag_unit(k, -1.0));
  prob.psd.push_back(std::move(blk));
  prob.y_start = RVector(n, op_norm(p) + 1.0);

  const ConicResult r = solve_conic(prob, tol);
  out.diag_left = r.y;
  out.primal_value = 0.0;
  for (double v : r.y) out.primal_value += v;
  out.primal_block = r.slack[0];
  out.dual_matrix = unit_diagonal(r.moment[0]);
  out.dual_value = inner(p, out.dual_matrix).real();
  out.gap = std::abs(out.primal_value - out.dual_value);
  out.iterations = r.iterations;
  return out;
}

SdpSolution solve_two_sided_scaling(const DenseMatrix& x, ScalingMode mode, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  const Support sup = support_of(x);
  SdpSolution out;
  out.diag_left.assign(m, 0.0);
  out.diag_right.assign(n, 0.0);
  if (sup.rows.empty()) {
    out.dual_matrix = DenseMatrix::identity(m + n);
    out.primal_block = DenseMatrix(m + n, m + n);
    return out;
  }
  const DenseMatrix xs = restrict_to(x, sup);
  const std::size_t ms = xs.rows(), ns = xs.cols(), d = ms + ns;
  const double start = op_norm(xs) + 1.0;

  ConicProblem prob;
  PsdBlockData blk{coupling_block(xs), {}};

  if (mode == ScalingMode::cbb) {
    prob.b.assign(d, -0.5);
    for (std::size_t k = 0; k < d; ++k) blk.a.push_back(diag_unit(k, -1.0));
    prob.psd.push_back(std::move(blk));
    prob.y_start = RVector(d, start);

    const ConicResult r = solve_conic(prob, tol);
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < ms; ++i) {
      out.diag_left[sup.rows[i]] = r.y[i];
      sa += r.y[i];
    }
    for (std::size_t j = 0; j < ns; ++j) {
      out.diag_right[sup.cols[j]] = r.y[ms + j];
      sb += r.y[ms + j];
    }
    out.primal_value = 0.5 * (sa + sb);
    out.primal_block = embed_block(r.slack[0], sup, m, n, 0.0);
    const DenseMatrix q = unit_diagonal(r.moment[0]);
    out.dual_value = -0.5 * inner(prob.psd[0].c, q).real();
    out.dual_matrix = embed_block(q, sup, m, n, 1.0);
    out.gap = std::abs(out.primal_value - out.dual_value);
    out.iterations = r.iterations;
    return out;
  }

  // Schur mode: variables t, then the Hermitian parameters of W1 and W2.
  std::vector<std::size_t> diag_var(d);
  std::size_t nv = 1;
  std::vector<SparseHermitian> a;
  a.push_back({});  // t does not enter the PSD block
  auto add_square = [&](std::size_t off, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
      diag_var[off + i] = nv++;
      a.push_back(diag_unit(off + i, -1.0));
      for (std::size_t j = i + 1; j < size; ++j) {
        a.push_back(offdiag_real(off + i, off + j, -1.0));
        a.push_back(offdiag_imag(off + i, off + j, -1.0));
        nv += 2;
      }
    }
  };
  add_square(0, ms);
  add_square(ms, ns);
  blk.a = std::move(a);
  prob.b.assign(nv, 0.0);
  prob.b[0] = -1.0;
  prob.psd.push_back(std::move(blk));

  LinearBlockData lin;
  lin.c.assign(d, 0.0);
  lin.a.resize(nv);
  for (std::size_t i = 0; i < d; ++i) {
    lin.a[0].push_back({i, -1.0});
    lin.a[diag_var[i]].push_back({i, 1.0});
  }
  prob.linear = std::move(lin);

  RVector y0(nv, 0.0);
  y0[0] = start + 1.0;
  for (std::size_t i = 0; i < d; ++i) y0[diag_var[i]] = start;
  prob.y_start = y0;

  const ConicResult r = solve_conic(prob, tol);
  out.primal_value = r.y[0];
  out.primal_block = embed_block(r.slack[0], sup, m, n, 0.0);
  for (std::size_t i = 0; i < ms; ++i) out.diag_left[sup.rows[i]] = r.y[diag_var[i]];
  for (std::size_t j = 0; j < ns; ++j) out.diag_right[sup.cols[j]] = r.y[diag_var[ms + j]];
  out.dual_value = -r.moment_value;
  out.dual_matrix = embed_block(r.moment[0], sup, m, n, 0.0);
  out.gap = std::abs(out.primal_value - out.dual_value);
  out.iterations = r.iterations;
  return out;
}

SdpSolution maximize_over_cbf_ball(const DenseMatrix& x, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols(), d = m + n;
  SdpSolution out;
  if (is_zero(x)) {
    out.witness = DenseMatrix(m, n);
    out.diag_left.assign(n, 1.0 / static_cast<double>(n));
    out.dual_matrix = DenseMatrix(d, d);
    return out;
  }
  const std::size_t nv = 2 * m * n + n;
  ConicProblem prob;
  prob.b.assign(nv, 0.0);
  DenseMatrix c(d, d);
  for (std::size_t i = 0; i < m; ++i) c(i, i) = 1.0;
  PsdBlockData blk{c, std::vector<SparseHermitian>(nv)};
  LinearBlockData lin{RVector{1.0}, std::vector<std::vector<std::pair<std::size_t, double>>>(nv)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t re = i * n + j, im = m * n + i * n + j;
      prob.b[re] = x(i, j).real();
      prob.b[im] = x(i, j).imag();
      blk.a[re] = offdiag_real(i, m + j, -1.0);
      blk.a[im] = offdiag_imag(i, m + j, -1.0);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    blk.a[2 * m * n + j] = diag_unit(m + j, -1.0);
    lin.a[2 * m * n + j].push_back({0, 1.0});
  }
  prob.psd.push_back(std::move(blk));
  prob.linear = std::move(lin);
  RVector y0(nv, 0.0);
  for (std::size_t j = 0; j < n; ++j) y0[2 * m * n + j] = 0.5 / static_cast<double>(n);
  prob.y_start = y0;

  const ConicResult r = solve_conic(prob, tol);
  out.witness = DenseMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out.witness(i, j) = cplx(r.y[i * n + j], r.y[m * n + i * n + j]);
  out.diag_left.assign(r.y.begin() + static_cast<std::ptrdiff_t>(2 * m * n), r.y.end());
  out.primal_value = inner(out.witness, x).real();
  out.primal_block = r.slack[0];
  out.dual_value = r.moment_value;
  out.dual_matrix = r.moment[0];
  out.gap = std::abs(out.primal_value - out.dual_value);
  out.iterations = r.iterations;
  return out;
}

}  // namespace groth
