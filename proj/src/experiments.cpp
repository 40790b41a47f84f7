#include "groth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "groth/errors.hpp"
#include "groth/factorizations.hpp"
#include "groth/geometry.hpp"
#include "groth/haagerup.hpp"
#include "groth/io.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"
#include "groth/sdp.hpp"

namespace groth {

namespace {

constexpr double kLittle = 4.0 / std::numbers::pi;
constexpr double kBigBound = 1.752;  // k/(2-k) rounded up

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<std::size_t> nonzero_rows(const DenseMatrix& x) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (norm2(x.row(i)) > 0.0) keep.push_back(i);
  return keep;
}

DenseMatrix select(const DenseMatrix& x, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  DenseMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = x(rows[i], cols[j]);
  return r;
}

}  // namespace

BlockEmbedding block_embedding(const DenseMatrix& x, const Tolerances& tol) {
  if (x.empty() || is_zero(x)) throw Error(ErrorCode::zero_matrix, "block_embedding: zero matrix");
  if (!x.all_finite()) throw Error(ErrorCode::non_finite, "block_embedding: non-finite entry");
  BlockEmbedding e;
  e.kept_rows = nonzero_rows(x);
  e.kept_cols = nonzero_rows(x.transpose());
  DenseMatrix xs = x;
  if (e.kept_rows.size() < x.rows() || e.kept_cols.size() < x.cols()) {
    xs = select(x, e.kept_rows, e.kept_cols);
    e.warning = "vanishing rows or columns trimmed";
  }
  const std::size_t m = xs.rows(), n = xs.cols();

  const CbBFactorization f = cbb_factorization(xs, tol);
  e.scale = f.value;
  e.X = (1.0 / f.value) * xs;
  e.eta = f.eta;
  e.xi = f.xi;
  e.gamma.resize(m + n);
  for (std::size_t i = 0; i < m; ++i) e.gamma[i] = e.eta[i] / std::sqrt(2.0);
  for (std::size_t j = 0; j < n; ++j) e.gamma[m + j] = e.xi[j] / std::sqrt(2.0);

  RVector d(m + n);
  for (std::size_t i = 0; i < m; ++i) d[i] = e.eta[i] * e.eta[i];
  for (std::size_t j = 0; j < n; ++j) d[m + j] = e.xi[j] * e.xi[j];
  e.P = DenseMatrix::diagonal(std::span<const double>(d));
  e.P.set_block(0, m, e.X);
  e.P.set_block(m, 0, e.X.adjoint());

  const NormBracket w = norm(e.X, NormKind::cbB, {}, tol);
  if (w.matrix.empty()) throw Error(ErrorCode::non_convergence, "block_embedding: no duality witness");
  const SchurFactorization s = schur_factorization(w.matrix, tol);
  DenseMatrix lr(s.L.rows(), m + n);
  lr.set_block(0, 0, s.L);
  lr.set_block(0, m, s.R);
  e.Q = hermitian_part(lr.adjoint() * lr);
  for (std::size_t i = 0; i < m + n; ++i)
    if (e.Q(i, i).real() < 1.0) e.Q(i, i) = 1.0;
  return e;
}

BlockEmbeddingChecks check_block_embedding(const BlockEmbedding& e, const TorusBudget& budget,
                                           const Tolerances& tol) {
  BlockEmbeddingChecks c;
  c.p_cbb = norm(e.P, NormKind::cbB, {}, tol);
  c.trace_qp = inner(e.Q, e.P).real();
  c.q_schur = norm(e.Q, NormKind::S, {}, tol).upper;
  TorusBudget pb = budget;
  c.p_b = max_quadratic_torus(e.P, pb, tol);
  NormBudget nb;
  nb.torus = budget;
  c.x_b = norm(e.X, NormKind::B, nb, tol);
  const double lo = 2.0 + 2.0 * c.x_b.lower, hi = 2.0 + 2.0 * c.x_b.upper;
  c.containment_gap = std::max({0.0, lo - c.p_b.upper, c.p_b.lower - hi});
  c.displayed_slack = kLittle * lo - 4.0;
  c.pass = std::max(std::abs(c.p_cbb.lower - 4.0), std::abs(c.p_cbb.upper - 4.0)) <= 4e-5 &&
           std::abs(c.trace_qp - 4.0) <= 4e-5 && std::abs(c.q_schur - 1.0) <= 1e-6 &&
           c.containment_gap <= 4e-6 && c.displayed_slack >= -4e-6;
  return c;
}

PsdDuality psd_duality(const DenseMatrix& p, const TorusBudget& budget, const Tolerances& tol) {
  require_psd(p, tol);
  PsdDuality d;
  const DenseMatrix h = hermitian_part(p);
  d.Q = hermitian_part(solve_diag_dominance(h, tol).dual_matrix);
  d.trace_qp = inner(d.Q, h).real();
  d.cbb = norm(h, NormKind::cbB, {}, tol);
  d.b = max_quadratic_torus(h, budget, tol);
  const CVector u = d.b.vectors.at(0).vector();
  d.R = DenseMatrix(u.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) d.R(i, j) = u[i] * std::conj(u[j]);
  d.trace_rp = inner(d.R, h).real();
  return d;
}

// ---- ratio scans -------------------------------------------------------------

const char* to_string(ScanKind k) {
  switch (k) {
    case ScanKind::positive: return "positive";
    case ScanKind::general: return "general";
    case ScanKind::little: return "little";
  }
  return "?";
}

const char* to_string(Ensemble e) {
  switch (e) {
    case Ensemble::ginibre: return "ginibre";
    case Ensemble::gram: return "gram";
    case Ensemble::nonnegative: return "nonnegative";
    case Ensemble::rank_one: return "rank_one";
  }
  return "?";
}

std::optional<ScanKind> parse_scan_kind(const std::string& s) {
  for (ScanKind k : {ScanKind::positive, ScanKind::general, ScanKind::little})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<Ensemble> parse_ensemble(const std::string& s) {
  for (Ensemble e : {Ensemble::ginibre, Ensemble::gram, Ensemble::nonnegative, Ensemble::rank_one})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

Ensemble default_ensemble(ScanKind k) { return k == ScanKind::positive ? Ensemble::gram : Ensemble::ginibre; }

DenseMatrix scan_sample(ScanKind kind, Ensemble ensemble, std::size_t rows, std::size_t cols,
                        std::uint64_t sample_seed) {
  Rng rng(sample_seed);
  if (kind == ScanKind::positive) {
    const std::size_t n = cols;
    switch (ensemble) {
      case Ensemble::gram: return random_elliptope(n, n, rng);
      case Ensemble::ginibre: {
        const DenseMatrix g = ginibre(n, n, rng);
        return hermitian_part(g.adjoint() * g);
      }
      case Ensemble::nonnegative: {
        const DenseMatrix g = uniform_nonnegative(n, n, rng);
        return hermitian_part(g.adjoint() * g);
      }
      case Ensemble::rank_one: {
        const CVector v = random_complex_vector(n, rng);
        CVector w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = std::conj(v[i]);
        return DenseMatrix::outer(v, w);
      }
    }
  }
  switch (ensemble) {
    case Ensemble::ginibre: return ginibre(rows, cols, rng);
    case Ensemble::gram: return random_elliptope(cols, cols, rng);
    case Ensemble::nonnegative: return uniform_nonnegative(rows, cols, rng);
    case Ensemble::rank_one: {
      const CVector a = random_complex_vector(rows, rng);
      const CVector b = random_complex_vector(cols, rng);
      return DenseMatrix::outer(a, b);
    }
  }
  throw Error(ErrorCode::domain, "unknown ensemble");
}

RatioScanReport ratio_scan(ScanKind kind, std::size_t rows, std::size_t cols, int count, std::uint64_t seed,
                           Ensemble ensemble, const TorusBudget& budget, const Tolerances& tol) {
  if (count < 1) throw Error(ErrorCode::domain, "ratio_scan: count must be at least 1");
  if (rows == 0 || cols == 0) throw Error(ErrorCode::dimension, "ratio_scan: empty shape");
  RatioScanReport r;
  r.kind = kind;
  r.ensemble = ensemble;
  r.rows = kind == ScanKind::positive ? cols : rows;
  r.cols = cols;
  r.samples = count;
  r.min_ratio = std::numeric_limits<double>::infinity();
  switch (kind) {
    case ScanKind::positive: r.bound = kLittle + 1e-3; break;
    case ScanKind::general: r.bound = kBigBound + 1e-2; break;
    case ScanKind::little: r.bound = std::sqrt(kLittle) + 1e-3; break;
  }
  NormBudget nb;
  nb.torus = budget;
  for (int k = 0; k < count; ++k) {
    const DenseMatrix x = scan_sample(kind, ensemble, rows, cols, derive_seed(seed, static_cast<std::uint64_t>(k)));
    NormBracket b;
    switch (kind) {
      case ScanKind::positive: b = max_quadratic_torus(x, budget, tol); break;
      case ScanKind::general: b = max_bilinear_torus(x, budget, tol); break;
      case ScanKind::little: b = norm(x, NormKind::F, nb, tol); break;
    }
    const double ratio = b.upper / b.lower;
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = k;
      r.argmax_matrix = x;
    }
    r.min_ratio = std::min(r.min_ratio, ratio);
    if (ratio > 1.0 + 1e-3) ++r.above_one;
    const double pos = (ratio - kHistogramLo) / (kHistogramHi - kHistogramLo) * kHistogramBuckets;
    if (pos < 0.0)
      ++r.below;
    else if (pos >= kHistogramBuckets)
      ++r.above;
    else
      ++r.histogram[static_cast<std::size_t>(pos)];
  }
  if (r.max_ratio > r.bound) r.status = CheckStatus::fail;
  if (r.min_ratio < 1.0 - 1e-9) r.status = CheckStatus::fail;
  if (kind == ScanKind::general)
    r.note = "literature window for the real-valued constant: 1.338 < K < 1.4049 (context only)";
  return r;
}

// ---- inequality suite ----------------------------------------------------------

namespace {

// Worst slack over a family of checks; a check passes when slack >= 0.
class Family {
 public:
  explicit Family(std::string name) : name_(std::move(name)) {}

  void check(double slack) {
    ++count_;
    worst_ = std::min(worst_, slack);
  }
  void fail(const std::string& why) {
    ++count_;
    worst_ = -std::numeric_limits<double>::infinity();
    if (note_.empty()) note_ = why;
  }
  void skip() { ++skipped_; }

  void emit(Report& r) const {
    if (count_ == 0 && skipped_ == 0) return;
    // value = number of checks, slack = worst case over them.
    ReportItem& it = r.add(name_, count_);
    it.slack = count_ ? worst_ : 0.0;
    it.status = count_ == 0 ? CheckStatus::skipped : (worst_ >= 0.0 ? CheckStatus::pass : CheckStatus::fail);
    if (skipped_) it.note = std::to_string(skipped_) + " skipped";
    if (!note_.empty()) it.note += (it.note.empty() ? "" : "; ") + note_;
  }

 private:
  std::string name_;
  int count_ = 0, skipped_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  std::string note_;
};

// Per-family sample streams: family f, sample k.
Rng sample_rng(std::uint64_t seed, std::uint64_t family, int k) {
  return Rng(derive_seed(derive_seed(seed, family), static_cast<std::uint64_t>(k)));
}

std::size_t dim(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next() % (hi - lo + 1));
}

// Runs body for k < count, turning library errors into a failed check.
void run(Family& f, int count, const std::function<void(int)>& body) {
  for (int k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (const Error& e) {
      f.fail(e.what());
    }
  }
}

}  // namespace

Report inequality_suite(std::uint64_t seed, const SuiteBudget& budget, const Tolerances& tol) {
  Report rep;
  rep.command = "verify";
  rep.seed = seed;
  const int s = std::max(0, budget.samples), hs = std::max(0, budget.heavy_samples);
  const std::size_t dmax = std::max<std::size_t>(2, budget.max_dim);

  // Rank-one closed forms for every norm.
  {
    std::vector<Family> fam;
    for (NormKind k : kAllNormKinds) fam.emplace_back(std::string("rank_one.") + to_string(k));
    for (int k = 0; k < s; ++k) {
      Rng rng = sample_rng(seed, 1, k);
      const CVector mu = random_complex_vector(dim(rng, 1, dmax), rng);
      const CVector nu = random_complex_vector(dim(rng, 1, dmax), rng);
      const DenseMatrix x = DenseMatrix::outer(mu, nu);
      const RankOneTable t = rank_one_closed_forms(mu, nu);
      for (std::size_t i = 0; i < std::size(kAllNormKinds); ++i) {
        const NormKind kind = kAllNormKinds[i];
        try {
          const NormBracket b = norm(x, kind, {}, tol);
          const double cf = t.get(kind), eps = 1e-6 * cf;
          const bool sdp = kind == NormKind::op || kind == NormKind::hs || kind == NormKind::cbF ||
                           kind == NormKind::cbB || kind == NormKind::S || kind == NormKind::T;
          if (sdp)
            fam[i].check(eps - std::max(std::abs(b.lower - cf), std::abs(b.upper - cf)));
          else
            fam[i].check(std::min(cf - b.lower, b.upper - cf) + eps);
        } catch (const Error& e) {
          fam[i].fail(e.what());
        }
      }
    }
    for (const auto& f : fam) f.emit(rep);
  }

  // Orderings and the Grothendieck-type ratios on general matrices.
  {
    Family s_op("order.S_le_op"), op_b("order.op_le_B"), b_cbb("order.B_le_cbB"), f_cbf("order.F_le_cbF"),
        little("grothendieck.little"), big("grothendieck.big");
    for (int k = 0; k < s; ++k) {
      Rng rng = sample_rng(seed, 2, k);
      const DenseMatrix x = ginibre(dim(rng, 1, dmax), dim(rng, 1, dmax), rng);
      try {
        const double op = op_norm(x);
        const NormBracket sn = norm(x, NormKind::S, {}, tol), b = norm(x, NormKind::B, {}, tol),
                          cbb = norm(x, NormKind::cbB, {}, tol), f = norm(x, NormKind::F, {}, tol),
                          cbf = norm(x, NormKind::cbF, {}, tol);
        s_op.check(op * (1 + 1e-6) - sn.upper);
        op_b.check(b.upper * (1 + 1e-6) - op);
        b_cbb.check(cbb.upper * (1 + 1e-6) - b.lower);
        f_cbf.check(cbf.upper * (1 + 1e-6) - f.lower);
        little.check((std::sqrt(kLittle) + 1e-3) * f.lower - cbf.upper);
        big.check((kBigBound + 1e-2) * b.lower - cbb.upper);
      } catch (const Error& e) {
        for (Family* f : {&s_op, &op_b, &b_cbb, &f_cbf, &little, &big}) f->fail(e.what());
      }
    }
    for (const Family* f : {&s_op, &op_b, &b_cbb, &f_cbf, &little, &big}) f->emit(rep);
  }

  // Positive semidefinite inputs: cbB <= (4/pi) B and the two duality traces.
  {
    Family pos("grothendieck.positive"), tq("duality.trace_QP_eq_cbB"), tr("duality.trace_RP_eq_B_lower");
    for (int k = 0; k < s; ++k) {
      Rng rng = sample_rng(seed, 3, k);
      const std::size_t n = dim(rng, 1, dmax + 1);
      const DenseMatrix p = random_elliptope(n, n, rng);
      try {
        const PsdDuality d = psd_duality(p, {}, tol);
        pos.check((kLittle + 1e-3) * d.b.lower - d.cbb.upper);
        tq.check(1e-5 - rel_gap(d.trace_qp, d.cbb.lower));
        tr.check(1e-5 - rel_gap(d.trace_rp, d.b.lower));
      } catch (const Error& e) {
        for (Family* f : {&pos, &tq, &tr}) f->fail(e.what());
      }
    }
    for (const Family* f : {&pos, &tq, &tr}) f->emit(rep);
  }

  // Duality witnesses against S and cbF.
  {
    Family ws("duality.cbB_S"), wt("duality.T_cbF");
    run(ws, s, [&](int k) {
      Rng rng = sample_rng(seed, 4, k);
      const DenseMatrix x = ginibre(dim(rng, 1, dmax), dim(rng, 1, dmax), rng);
      const DualityWitness a = duality_witness(x, DualityPair::cbb_s, tol);
      ws.check(std::min(a.pairing - a.value * (1 - 1e-6), 1 + 1e-7 - norm(a.Y, NormKind::S, {}, tol).upper));
      const DualityWitness b = duality_witness(x, DualityPair::t_cbf, tol);
      wt.check(std::min(b.pairing - b.value * (1 - 1e-6), 1 + 1e-7 - norm(b.Y, NormKind::cbF, {}, tol).upper));
    });
    ws.emit(rep);
    wt.emit(rep);
  }

  // Factorization X = D C with balanced cbF norms.
  {
    Family split("factorization.split");
    run(split, s, [&](int k) {
      Rng rng = sample_rng(seed, 5, k);
      const DenseMatrix x = ginibre(dim(rng, 1, dmax), dim(rng, 1, dmax), rng);
      const FactSplit f = fact_split(x, tol);
      const double cbb = norm(x, NormKind::cbB, {}, tol).lower;
      const double c2 = std::pow(norm(f.C, NormKind::cbF, {}, tol).lower, 2);
      split.check(std::min(1e-7 - hs_norm(x - f.D * f.C) / hs_norm(x), 1e-5 - rel_gap(c2, cbb)));
    });
    split.emit(rep);
  }

  // Non-negative matrices: closed forms, the cbB chain with equality.
  {
    Family cf("nonneg.cbF_eq_F_closed_form"), xi("nonneg.haagerup_xi_eq_sdp_xi"), eq("cbb_chain.equality"),
        ed("haagerup.eigen_determinant");
    run(cf, s, [&](int k) {
      Rng rng = sample_rng(seed, 6, k);
      const DenseMatrix x = uniform_nonnegative(dim(rng, 1, dmax), dim(rng, 1, dmax), rng);
      const NonnegClosedForms c = nonneg_closed_forms(x);
      const NormBracket cbf = norm(x, NormKind::cbF, {}, tol), f = norm(x, NormKind::F, {}, tol);
      cf.check(1e-6 - std::max({rel_gap(cbf.lower, c.cbf_norm), rel_gap(cbf.upper, c.cbf_norm),
                                rel_gap(f.lower, c.f_norm)}));
      const HaagerupData d = haagerup_construction(x, {}, tol);
      const CbfVector v = cbf_vector(x, tol);
      double worst = 0.0;
      for (std::size_t j = 0; j < x.cols(); ++j) worst = std::max(worst, std::abs(d.xi[j] - v.xi[j]));
      xi.check(1e-5 - worst);
      const CbbBoundChain ch = cbb_bound_chain(x, tol);
      eq.check(ch.ordered && ch.equality ? 1e-6 - rel_gap(ch.cbb_lower, ch.middle_sum) : -1.0);
      const EigenDeterminantReport e = eigen_and_determinant_checks(x, d, tol);
      if (e.status == CheckStatus::partial)
        ed.skip();
      else
        ed.check(std::min({1e-6 * e.f_squared - e.eigen_residual, 1e-6 * e.scale_haagerup - std::abs(e.det_haagerup),
                           1e-6 * e.scale_cbb - std::abs(e.det_cbb)}));
    });
    for (const Family* f : {&cf, &xi, &eq, &ed}) f->emit(rep);
  }

  // Haagerup construction on general matrices (grid-certified sizes).
  {
    Family chain("haagerup.chain"), ineq("haagerup.inequalities"), zb("haagerup.Z_le_sqrt2"),
        order("cbb_chain.ordered");
    run(chain, s, [&](int k) {
      Rng rng = sample_rng(seed, 7, k);
      const DenseMatrix x = ginibre(dim(rng, 1, dmax), dim(rng, 1, std::min<std::size_t>(dmax, 4)), rng);
      const CbbBoundChain ch = cbb_bound_chain(x, tol);
      order.check(ch.ordered ? 0.0 : -1.0);
      const HaagerupData d = haagerup_construction(x, {}, tol);
      if (!d.u_certified) {
        chain.skip();
        return;
      }
      const double cbf = norm(x, NormKind::cbF, {}, tol).lower;
      const double scaled = op_norm(scale_rows_cols(x, RVector(x.rows(), 1.0), pseudo_inverse(d.xi)));
      const double t = 1e-7 * std::max(1.0, d.f_norm);
      chain.check(std::min({cbf + t - d.f_norm, scaled + t - cbf, std::sqrt(2.0) * d.f_norm + t - scaled}));
      zb.check(std::sqrt(2.0) + 1e-3 - op_norm(d.Z));
      const HaagerupInequalityReport h = verify_haagerup_inequalities(x, d, 50, derive_seed(seed, 700 + k));
      ineq.check(-static_cast<double>(h.violations));
    });
    for (const Family* f : {&chain, &zb, &ineq, &order}) f->emit(rep);
  }

  // Block embedding of a normalized X into a PSD matrix of size m + n.
  {
    Family cbb("block_embedding.cbB_P_eq_4"), tqp("block_embedding.trace_QP_eq_4"),
        qs("block_embedding.Q_S_eq_1"), cont("block_embedding.B_P_contains_2_plus_2B_X"),
        disp("block_embedding.4_le_k_times_2_plus_2B_X");
    for (int k = 0; k < s; ++k) {
      Rng rng = sample_rng(seed, 8, k);
      const std::size_t lim = std::min<std::size_t>(dmax, 4);
      const DenseMatrix x = ginibre(dim(rng, 1, lim), dim(rng, 1, lim), rng);
      try {
        const BlockEmbedding e = block_embedding(x, tol);
        const BlockEmbeddingChecks c = check_block_embedding(e, {}, tol);
        cbb.check(4e-5 - std::max(std::abs(c.p_cbb.lower - 4.0), std::abs(c.p_cbb.upper - 4.0)));
        tqp.check(4e-5 - std::abs(c.trace_qp - 4.0));
        qs.check(1e-6 - std::abs(c.q_schur - 1.0));
        cont.check(4e-6 - c.containment_gap);
        disp.check(c.displayed_slack + 4e-6);
      } catch (const Error& e) {
        for (Family* f : {&cbb, &tqp, &qs, &cont, &disp}) f->fail(e.what());
      }
    }
    for (const Family* f : {&cbb, &tqp, &qs, &cont, &disp}) f->emit(rep);
  }

  // Convex geometry: Q = 1.35 R - P, and the constructive V-gauge bound.
  {
    Family geo("geometry.decompose_geo_1.35"), vm("grothendieck.proj_inf_inf_via_V"), vr("geometry.v_residual");
    run(geo, hs, [&](int k) {
      Rng rng = sample_rng(seed, 9, k);
      const std::size_t n = dim(rng, 2, dmax);
      const GeoDecomposition d = decompose_geo(random_elliptope(n, n, rng), 1.35, {}, tol);
      geo.check(d.min_eig_achieved + tol.feasibility);
    });
    const double bound = kLittle / (2.0 - kLittle);
    for (int k = 0; k < hs; ++k) {
      Rng rng = sample_rng(seed, 10, k);
      const std::size_t lim = std::min<std::size_t>(dmax, 4);
      DenseMatrix x = ginibre(dim(rng, 2, lim), dim(rng, 2, lim), rng);
      try {
        x *= 1.0 / norm(x, NormKind::S, {}, tol).upper;
        const VMembership v = v_membership(x, kLittle, {}, tol);
        vm.check(bound + 1e-2 - v.rho);
        vr.check(tol.feasibility - v.residual);
      } catch (const Error& e) {
        vm.fail(e.what());
        vr.fail(e.what());
      }
    }
    for (const Family* f : {&geo, &vm, &vr}) f->emit(rep);
  }
  return rep;
}

}  // namespace groth
