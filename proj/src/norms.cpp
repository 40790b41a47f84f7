#include "groth/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <iterator>
#include <numeric>

#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/sdp.hpp"

namespace groth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

NormBracket exact(double v) {
  NormBracket b;
  b.lower = b.upper = v;
  b.lower_certified = true;
  return b;
}

double max_diag(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, a(i, i).real());
  return m;
}

void order(NormBracket& b) {
  b.lower = std::max(0.0, b.lower);
  b.upper = std::max(b.upper, b.lower);
}

NormBracket cbf_norm(const DenseMatrix& x, const Tolerances& tol) {
  const DenseMatrix p = hermitian_part(x.adjoint() * x);
  NormBracket b;
  try {
    const SdpSolution s = solve_diag_dominance(p, tol);
    b.lower = std::sqrt(std::max(0.0, inner(p, s.dual_matrix).real()));
    b.upper = std::sqrt(certified_diag_upper(p, s.diag_left));
    b.matrix = s.dual_matrix;
  } catch (const SdpNonConvergence& e) {
    b.upper = std::sqrt(certified_diag_upper(p, e.last_iterate().y));
    b.status = BracketStatus::budget_exhausted;
  }
  order(b);
  return b;
}

NormBracket cbb_norm(const DenseMatrix& x, const Tolerances& tol) {
  NormBracket b;
  try {
    const SdpSolution s = solve_two_sided_scaling(x, ScalingMode::cbb, tol);
    b.matrix = -1.0 * s.dual_matrix.block(0, x.rows(), x.rows(), x.cols());
    b.lower = inner(b.matrix, x).real();
    b.upper = certified_scaling_upper(x, s.diag_left, s.diag_right);
  } catch (const SdpNonConvergence&) {
    const double op = op_norm(x);
    b.upper = certified_scaling_upper(x, RVector(x.rows(), op), RVector(x.cols(), op));
    b.status = BracketStatus::budget_exhausted;
  }
  order(b);
  return b;
}

NormBracket schur_norm(const DenseMatrix& x, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  NormBracket b;
  try {
    const SdpSolution s = solve_two_sided_scaling(x, ScalingMode::schur, tol);
    b.upper = max_diag(s.primal_block) + std::max(0.0, -min_eigenvalue(s.primal_block));
    // Y = -2 Z_12 has cbB norm at most sum diag(Z) = 1; certify it exactly.
    const DenseMatrix& z = s.dual_matrix;
    DenseMatrix y = -2.0 * z.block(0, m, m, n);
    RVector a(m), c(n);
    for (std::size_t i = 0; i < m; ++i) a[i] = 2.0 * z(i, i).real();
    for (std::size_t j = 0; j < n; ++j) c[j] = 2.0 * z(m + j, m + j).real();
    const double scale = certified_scaling_upper(y, a, c);
    if (scale > 0.0) {
      y *= 1.0 / scale;
      b.lower = inner(y, x).real();
      b.matrix = y;
    }
  } catch (const SdpNonConvergence&) {
    b.upper = op_norm(x);
    b.status = BracketStatus::budget_exhausted;
  }
  order(b);
  return b;
}

NormBracket t_norm(const DenseMatrix& x, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  NormBracket b;
  try {
    const SdpSolution s = maximize_over_cbf_ball(x, tol);
    DenseMatrix y = s.witness;
    const double cbf = std::sqrt(certified_diag_upper(hermitian_part(y.adjoint() * y), s.diag_left));
    if (cbf > 0.0) {
      y *= 1.0 / cbf;
      b.lower = inner(y, x).real();
      b.matrix = y;
    }
    // Upper: [[Z11, -X/2], [-X*/2, Z22]] >= 0 gives Tr Z11 + max diag Z22.
    const DenseMatrix& z = s.dual_matrix;
    DenseMatrix cert(m + n, m + n);
    cert.set_block(0, 0, z.block(0, 0, m, m));
    cert.set_block(m, m, z.block(m, m, n, n));
    cert.set_block(0, m, -0.5 * x);
    cert.set_block(m, 0, -0.5 * x.adjoint());
    const double eps = std::max(0.0, -min_eigenvalue(hermitian_part(cert)));
    b.upper = trace(z.block(0, 0, m, m)).real() + max_diag(z.block(m, m, n, n)) +
              eps * static_cast<double>(m + 1);
  } catch (const SdpNonConvergence&) {
    b.upper = hs_norm(x) * std::sqrt(static_cast<double>(n));
    b.status = BracketStatus::budget_exhausted;
  }
  order(b);
  return b;
}

// ---- column generation ------------------------------------------------------

// Real coordinates (Re, Im) of an m x n matrix, row-major.
RVector realify(const DenseMatrix& a) {
  const std::size_t mn = a.rows() * a.cols();
  RVector v(2 * mn);
  for (std::size_t k = 0; k < mn; ++k) {
    v[k] = a.entries()[k].real();
    v[mn + k] = a.entries()[k].imag();
  }
  return v;
}

DenseMatrix complexify(const RVector& v, std::size_t m, std::size_t n) {
  DenseMatrix a(m, n);
  const std::size_t mn = m * n;
  for (std::size_t k = 0; k < mn; ++k) a.entries()[k] = cplx(v[k], v[mn + k]);
  return a;
}

double entry_l1(const DenseMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::abs(z);
  return s;
}

double column_l2_sum(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) s += norm2(a.col(j));
  return s;
}

CVector fourier(std::size_t n, std::size_t k) {
  CVector f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = std::polar(1.0, kTwoPi * static_cast<double>(i * k % n) / static_cast<double>(n));
  return f;
}

// Writes a vector of the unit polydisc as a convex combination of at most
// n + 1 unimodular vectors (threshold rounding of each modulus).
std::vector<std::pair<double, CVector>> polydisc_split(std::span<const cplx> z) {
  const std::size_t n = z.size();
  RVector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = 0.5 * (1.0 + std::min(1.0, std::abs(z[i])));
  RVector cuts(p);
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, CVector>> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double w = cuts[k + 1] - cuts[k];
    if (w <= 1e-15) continue;
    const double tau = 0.5 * (cuts[k] + cuts[k + 1]);
    CVector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (tau < p[i] ? 1.0 : -1.0) * phase(z[i]);
    out.emplace_back(w, std::move(u));
  }
  return out;
}

struct PoolAtom {
  DenseMatrix matrix;
  RVector coords;
};

struct ColumnGeneration {
  std::vector<PoolAtom> pool;
  RVector weights;
  DenseMatrix dual;  // G, pairing Re<G, atom> <= 1 on the pool
  double atom_max = INFINITY;  // best generated atom value at the final dual
  int rounds = 0;
  bool converged = false;
  bool capped = false;
};

PoolAtom make_atom(DenseMatrix a) {
  PoolAtom p{std::move(a), {}};
  p.coords = realify(p.matrix);
  return p;
}

bool duplicate(const std::vector<PoolAtom>& pool, const DenseMatrix& a) {
  for (const auto& p : pool)
    if (hs_norm(p.matrix - a) < 1e-8) return true;
  return false;
}

// Generator: dual matrix G -> candidate atoms sorted by Re<G, atom>, best first.
template <class Generator>
ColumnGeneration column_generation(const DenseMatrix& x, std::vector<PoolAtom> pool, std::size_t base,
                                   Generator gen, double known_lower, const NormBudget& budget,
                                   const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  const std::size_t cap = static_cast<std::size_t>(budget.gauge_atom_factor) * (m + n);
  const RVector target = realify(x);
  const std::size_t nv = target.size();
  ColumnGeneration cg;
  cg.pool = std::move(pool);

  for (int round = 0; round < budget.gauge_max_rounds; ++round) {
    cg.rounds = round + 1;
    ConicProblem prob;
    prob.b = target;
    LinearBlockData lin;
    lin.c.assign(cg.pool.size(), 1.0);
    lin.a.resize(nv);
    for (std::size_t k = 0; k < cg.pool.size(); ++k)
      for (std::size_t v = 0; v < nv; ++v)
        if (cg.pool[k].coords[v] != 0.0) lin.a[v].push_back({k, cg.pool[k].coords[v]});
    prob.linear = std::move(lin);
    prob.y_start = RVector(nv, 0.0);

    ConicResult r;
    try {
      r = solve_conic(prob, tol);
    } catch (const SdpNonConvergence& e) {
      r = e.last_iterate();
    }
    cg.weights = r.linear_moment;
    for (auto& w : cg.weights) w = std::max(0.0, w);
    cg.dual = complexify(r.y, m, n);

    // The bracket already closes against an independent lower bound.
    if (r.design_value <= known_lower * (1.0 + budget.gauge_tol) &&
        (r.converged || r.design_value <= known_lower * (1.0 + 1e-9))) {
      cg.converged = true;
      break;
    }
    std::vector<DenseMatrix> cands = gen(cg.dual);
    cg.atom_max = 0.0;
    for (const auto& c : cands) cg.atom_max = std::max(cg.atom_max, inner(cg.dual, c).real());
    if (cg.atom_max <= 1.0 + budget.gauge_tol) {
      cg.converged = true;
      break;
    }
    if (round + 1 == budget.gauge_max_rounds) break;
    std::vector<DenseMatrix> fresh;
    for (auto& c : cands) {
      if (inner(cg.dual, c).real() <= 1.0 + 0.1 * budget.gauge_tol) continue;
      if (duplicate(cg.pool, c)) continue;
      fresh.push_back(std::move(c));
    }
    if (fresh.empty()) break;
    // Drop generated atoms that carry (almost) no weight.
    const double total = std::accumulate(cg.weights.begin(), cg.weights.end(), 0.0);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < cg.pool.size(); ++k)
      if (k < base || cg.weights[k] > 1e-6 * total) keep.push_back(k);
    if (keep.size() >= cap) {
      cg.capped = true;
      break;
    }
    std::vector<PoolAtom> kept;
    for (std::size_t k : keep) kept.push_back(std::move(cg.pool[k]));
    cg.pool = std::move(kept);
    for (auto& c : fresh) {
      if (cg.pool.size() >= cap) break;
      cg.pool.push_back(make_atom(std::move(c)));
    }
    // Weights refer to the previous pool until the next solve.
    cg.weights.clear();
  }
  if (cg.weights.size() != cg.pool.size()) cg.weights.assign(cg.pool.size(), 0.0);
  return cg;
}

DenseMatrix mixture_of(const ColumnGeneration& cg, std::size_t m, std::size_t n) {
  DenseMatrix s(m, n);
  for (std::size_t k = 0; k < cg.pool.size(); ++k)
    if (cg.weights[k] > 0.0) s += cplx(cg.weights[k]) * cg.pool[k].matrix;
  return s;
}

double weight_sum(const ColumnGeneration& cg) {
  double s = 0.0;
  for (double w : cg.weights) s += w;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::op: return "op";
    case NormKind::hs: return "hs";
    case NormKind::F: return "F";
    case NormKind::cbF: return "cbF";
    case NormKind::B: return "B";
    case NormKind::cbB: return "cbB";
    case NormKind::S: return "S";
    case NormKind::T: return "T";
    case NormKind::proj_inf_inf: return "proj_inf_inf";
    case NormKind::proj_2_inf: return "proj_2_inf";
  }
  return "unknown";
}

std::optional<NormKind> parse_norm_kind(std::string_view name) {
  for (NormKind k : kAllNormKinds)
    if (name == to_string(k)) return k;
  if (name == "H" || name == "h") return NormKind::S;
  if (name == "gamma2" || name == "H'") return NormKind::cbB;
  return std::nullopt;
}

DenseMatrix AtomMixtureV::implied() const {
  DenseMatrix s(rows, cols);
  for (const auto& a : atoms) {
    const CVector u = a.s.vector(), v = a.t.vector();
    s += a.coefficient * DenseMatrix::outer(u, v);
  }
  return s;
}

double AtomMixtureV::gauge() const {
  double g = 0.0;
  for (const auto& a : atoms) g += std::abs(a.coefficient);
  return g;
}

DenseMatrix AtomMixture2Inf::implied() const {
  DenseMatrix s(rows, cols);
  for (const auto& a : atoms) s += cplx(a.weight) * DenseMatrix::outer(a.mu, a.nu.vector());
  return s;
}

double AtomMixture2Inf::gauge() const {
  double g = 0.0;
  for (const auto& a : atoms) g += a.weight;
  return g;
}

GaugeVResult gauge_inf_inf(const DenseMatrix& x, const NormBudget& budget, const Tolerances& tol,
                           const std::vector<AtomMixtureV::Atom>& seed_atoms) {
  const std::size_t m = x.rows(), n = x.cols();
  GaugeVResult out;
  out.mixture.rows = m;
  out.mixture.cols = n;
  if (is_zero(x)) {
    out.bracket = exact(0.0);
    return out;
  }

  const cplx phases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  std::vector<PoolAtom> pool;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const DenseMatrix base = DenseMatrix::outer(fourier(m, a), fourier(n, b));
      for (const cplx& w : phases) pool.push_back(make_atom(w * base));
    }
  const std::size_t base = pool.size();
  for (const auto& s : seed_atoms) {
    DenseMatrix a = phase(s.coefficient) * DenseMatrix::outer(s.s.vector(), s.t.vector());
    if (!duplicate(pool, a)) pool.push_back(make_atom(std::move(a)));
  }
  // Products of polydisc splits of the leading singular pair.
  {
    const Svd sv = svd(x, tol);
    CVector u = sv.U.col(0), v = sv.V.col(0);
    for (auto& z : v) z = std::conj(z);
    const double ui = norm_inf(u), vi = norm_inf(v);
    for (auto& z : u) z /= ui;
    for (auto& z : v) z /= vi;
    for (const auto& [wa, a] : polydisc_split(u))
      for (const auto& [wb, b] : polydisc_split(v)) {
        DenseMatrix atom = DenseMatrix::outer(a, b);
        if (!duplicate(pool, atom)) pool.push_back(make_atom(std::move(atom)));
      }
  }

  TorusBudget tb = budget.torus;
  tb.compute_upper = false;
  auto gen = [&](const DenseMatrix& g) {
    std::vector<DenseMatrix> c;
    for (auto& [s, t] : bilinear_local_maxima(g.conj(), tb)) c.push_back(DenseMatrix::outer(s, t));
    return c;
  };
  // Lower: Schur norm, or the LP dual scaled by a certified bound on its
  // dual (B) norm, whichever is larger.
  const NormBracket s = schur_norm(x, tol);
  const ColumnGeneration cg = column_generation(x, std::move(pool), base, gen, s.lower, budget, tol);

  NormBracket& b = out.bracket;
  b.upper = weight_sum(cg) + entry_l1(x - mixture_of(cg, m, n));
  b.lower = s.lower;
  b.matrix = s.matrix;
  const double pair = inner(cg.dual, x).real();
  if (pair > b.lower) {
    const NormBracket g = cbb_norm(cg.dual.conj(), tol);
    if (g.upper > 0.0 && pair / g.upper > b.lower) {
      b.lower = pair / g.upper;
      b.matrix = (1.0 / g.upper) * cg.dual;
    }
  }
  if (!cg.converged) {
    b.status = BracketStatus::budget_exhausted;
    b.note = "column generation stopped before the dual certified optimality";
  }
  order(b);

  const double total = weight_sum(cg);
  for (std::size_t k = 0; k < cg.pool.size(); ++k) {
    if (cg.weights[k] <= 1e-12 * total) continue;
    // Pool atoms are unimodular rank-ones: a = s t^T up to the phase of a(0, 0).
    const DenseMatrix& a = cg.pool[k].matrix;
    CVector s(m), t(n);
    for (std::size_t i = 0; i < m; ++i) s[i] = phase(a(i, 0));
    for (std::size_t j = 0; j < n; ++j) t[j] = phase(a(0, j)) * std::conj(phase(a(0, 0)));
    out.mixture.atoms.push_back({TorusVector::from_vector(s), TorusVector::from_vector(t),
                                 cg.weights[k] * phase(a(0, 0))});
  }
  out.rounds = cg.rounds;
  out.pool_size = cg.pool.size();
  return out;
}

Gauge2InfResult gauge_2_inf(const DenseMatrix& x, const NormBudget& budget, const Tolerances& tol) {
  const std::size_t m = x.rows(), n = x.cols();
  Gauge2InfResult out;
  out.mixture.rows = m;
  out.mixture.cols = n;
  if (is_zero(x)) {
    out.bracket = exact(0.0);
    return out;
  }
  const cplx phases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  std::vector<PoolAtom> pool;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < n; ++b) {
      CVector e(m);
      e[i] = 1.0;
      const DenseMatrix base = DenseMatrix::outer(e, fourier(n, b));
      for (const cplx& w : phases) pool.push_back(make_atom(w * base));
    }

  const std::size_t base = pool.size();
  {
    const Svd sv = svd(x, tol);
    CVector mu = sv.U.col(0), v = sv.V.col(0);
    for (auto& z : v) z = std::conj(z);
    const double vi = norm_inf(v);
    for (auto& z : v) z /= vi;
    for (const auto& [wb, b] : polydisc_split(v)) {
      DenseMatrix atom = DenseMatrix::outer(mu, b);
      if (!duplicate(pool, atom)) pool.push_back(make_atom(std::move(atom)));
    }
  }

  TorusBudget tb = budget.torus;
  tb.compute_upper = false;
  auto gen = [&](const DenseMatrix& g) {
    const DenseMatrix mg = g.conj();
    std::vector<DenseMatrix> c;
    for (const auto& nu : quadratic_local_maxima(hermitian_part(mg.adjoint() * mg), tb)) {
      CVector v = mg * std::span<const cplx>(nu);
      const double len = norm2(v);
      if (len == 0.0) continue;
      for (auto& z : v) z = std::conj(z) / len;
      c.push_back(DenseMatrix::outer(v, nu));
    }
    return c;
  };
  const NormBracket t = t_norm(x, tol);
  const ColumnGeneration cg = column_generation(x, std::move(pool), base, gen, t.lower, budget, tol);

  NormBracket& b = out.bracket;
  b.upper = weight_sum(cg) + column_l2_sum(x - mixture_of(cg, m, n));
  b.lower = t.lower;
  b.matrix = t.matrix;
  const double pair = inner(cg.dual, x).real();
  if (pair > b.lower) {
    // Dual norm of the gauge is F; certify it through the elliptope program.
    const DenseMatrix p = hermitian_part(cg.dual.adjoint() * cg.dual);
    double f_upper = INFINITY;
    try {
      f_upper = std::sqrt(certified_diag_upper(p, solve_diag_dominance(p, tol).diag_left));
    } catch (const SdpNonConvergence& e) {
      f_upper = std::sqrt(certified_diag_upper(p, e.last_iterate().y));
    }
    if (f_upper > 0.0 && pair / f_upper > b.lower) {
      b.lower = pair / f_upper;
      b.matrix = (1.0 / f_upper) * cg.dual;
    }
  }
  if (!cg.converged) {
    b.status = BracketStatus::budget_exhausted;
    b.note = "column generation stopped before the dual certified optimality";
  }
  order(b);

  const double total = weight_sum(cg);
  for (std::size_t k = 0; k < cg.pool.size(); ++k) {
    if (cg.weights[k] <= 1e-12 * total) continue;
    const DenseMatrix& a = cg.pool[k].matrix;
    // a = mu nu^T with unimodular nu: recover nu from the row of largest mass.
    std::size_t r = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (norm2(a.row(i)) > norm2(a.row(r))) r = i;
    CVector nu = a.row(r);
    for (auto& z : nu) z = phase(z);
    const TorusVector tv = TorusVector::from_vector(nu);
    const CVector nv = tv.vector();
    CVector mu = a.col(0);
    for (auto& z : mu) z /= nv[0];
    out.mixture.atoms.push_back({mu, tv, cg.weights[k]});
  }
  out.rounds = cg.rounds;
  out.pool_size = cg.pool.size();
  return out;
}

NormBracket norm(const DenseMatrix& x, NormKind kind, const NormBudget& budget, const Tolerances& tol) {
  if (x.empty()) throw Error(ErrorCode::dimension, "empty matrix");
  switch (kind) {
    case NormKind::op: return exact(op_norm(x));
    case NormKind::hs: return exact(hs_norm(x));
    case NormKind::F: {
      NormBracket b = max_quadratic_torus(hermitian_part(x.adjoint() * x), budget.torus, tol);
      b.lower = std::sqrt(std::max(0.0, b.lower));
      b.upper = std::sqrt(std::max(0.0, b.upper));
      if (b.status == BracketStatus::bound_violated) b.note = "F upper/lower exceeds sqrt(4/pi)";
      return b;
    }
    case NormKind::cbF: return cbf_norm(x, tol);
    case NormKind::B: return max_bilinear_torus(x, budget.torus, tol);
    case NormKind::cbB: return cbb_norm(x, tol);
    case NormKind::S: return schur_norm(x, tol);
    case NormKind::T: return t_norm(x, tol);
    case NormKind::proj_inf_inf: return gauge_inf_inf(x, budget, tol).bracket;
    case NormKind::proj_2_inf: return gauge_2_inf(x, budget, tol).bracket;
  }
  throw Error(ErrorCode::domain, "unknown norm kind");
}

double RankOneTable::get(NormKind k) const {
  switch (k) {
    case NormKind::op: return op;
    case NormKind::hs: return hs;
    case NormKind::F: return F;
    case NormKind::cbF: return cbF;
    case NormKind::B: return B;
    case NormKind::cbB: return cbB;
    case NormKind::S: return S;
    case NormKind::T: return T;
    case NormKind::proj_inf_inf: return proj_inf_inf;
    case NormKind::proj_2_inf: return proj_2_inf;
  }
  throw Error(ErrorCode::domain, "unknown norm kind");
}

RankOneTable rank_one_closed_forms(std::span<const cplx> mu, std::span<const cplx> nu) {
  if (mu.empty() || nu.empty() || norm2(mu) == 0.0 || norm2(nu) == 0.0)
    throw Error(ErrorCode::zero_matrix, "rank-one closed forms need nonzero vectors");
  const double m1 = norm1(mu), m2 = norm2(mu), mi = norm_inf(mu);
  const double n1 = norm1(nu), n2 = norm2(nu), ni = norm_inf(nu);
  RankOneTable t{};
  t.op = t.hs = m2 * n2;
  t.F = t.cbF = m2 * n1;
  t.B = t.cbB = m1 * n1;
  t.S = t.proj_inf_inf = mi * ni;
  t.T = t.proj_2_inf = m2 * ni;
  return t;
}

}  // namespace groth
