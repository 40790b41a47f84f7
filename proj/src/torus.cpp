#include "groth/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/random.hpp"
#include "groth/sdp.hpp"

namespace groth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLittle = 4.0 / std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

CVector phases_of(std::span<const cplx> v) {
  CVector u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = phase(v[i]);
  return u;
}

// Strictly better by more than rounding; keeps the earliest start on ties.
bool improves(double candidate, double best) {
  if (std::isinf(best)) return true;
  return candidate > best + 1e-13 * std::max(1.0, std::abs(best));
}

struct Search {
  CVector best;
  double value = -INFINITY;
  bool capped = false;  // the winning run hit the iteration cap
};

// ---- quadratic ------------------------------------------------------------

// u <- phase(H u) on a PSD H; the objective never decreases.
double fixed_point(const DenseMatrix& h, CVector& u, const TorusBudget& budget, bool& capped) {
  double f = quadratic_value(h, u);
  capped = true;
  for (int it = 0; it < budget.max_iters; ++it) {
    CVector next = phases_of(h * std::span<const cplx>(u));
    const double g = quadratic_value(h, next);
    const double gain = g - f;
    if (g >= f) {
      u = std::move(next);
      f = g;
    }
    if (gain <= budget.gain_tol * std::max(1.0, std::abs(f))) {
      capped = false;
      break;
    }
  }
  return f;
}

// Exhaustive grid over phases 1..n-2 with u_0 = 1; the last phase is chosen
// in closed form. Returns the best grid points, best first.
std::vector<CVector> quadratic_grid(const DenseMatrix& h, int points, std::size_t keep) {
  const std::size_t n = h.rows();
  const std::size_t g = n - 2;  // grid dimensions
  std::vector<cplx> roots(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / points);

  std::vector<std::pair<double, CVector>> top;
  std::vector<std::size_t> idx(g, 0);
  CVector w(n - 1, 1.0);
  const std::size_t last = n - 1;
  while (true) {
    for (std::size_t k = 0; k < g; ++k) w[k + 1] = roots[idx[k]];
    double q = 0.0;
    cplx r{};
    for (std::size_t i = 0; i < last; ++i) {
      cplx row{};
      for (std::size_t j = 0; j < last; ++j) row += h(i, j) * w[j];
      q += (std::conj(w[i]) * row).real();
      r += h(last, i) * w[i];
    }
    const double val = q + 2.0 * std::abs(r) + h(last, last).real();
    if (top.size() < keep || val > top.back().first) {
      CVector u = w;
      u.push_back(phase(r));
      top.emplace_back(val, std::move(u));
      std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (top.size() > keep) top.pop_back();
    }
    std::size_t k = 0;
    while (k < g && ++idx[k] == static_cast<std::size_t>(points)) idx[k++] = 0;
    if (k == g) break;
  }
  std::vector<CVector> out;
  for (auto& t : top) out.push_back(std::move(t.second));
  return out;
}

// ---- bilinear ---------------------------------------------------------------

// Best t for fixed s: t_j = conj(phase((s^T X)_j)); returns the value.
double best_right(const DenseMatrix& x, std::span<const cplx> s, CVector& t) {
  t.assign(x.cols(), 1.0);
  double v = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    cplx c{};
    for (std::size_t i = 0; i < x.rows(); ++i) c += s[i] * x(i, j);
    t[j] = std::conj(phase(c));
    v += std::abs(c);
  }
  return v;
}

double best_left(const DenseMatrix& x, std::span<const cplx> t, CVector& s) {
  s.assign(x.rows(), 1.0);
  double v = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    cplx c{};
    for (std::size_t j = 0; j < x.cols(); ++j) c += x(i, j) * t[j];
    s[i] = std::conj(phase(c));
    v += std::abs(c);
  }
  return v;
}

double alternate(const DenseMatrix& x, CVector& s, CVector& t, const TorusBudget& budget, bool& capped) {
  double f = best_right(x, s, t);
  capped = true;
  for (int it = 0; it < budget.max_iters; ++it) {
    CVector s2, t2;
    const double g1 = best_left(x, t, s2);
    const double g2 = best_right(x, s2, t2);
    const double slack = 1e-12 * std::max(1.0, f);
    if (g1 < f - slack || g2 < g1 - slack)
      throw Error(ErrorCode::non_convergence, "alternating torus step decreased the objective");
    const double gain = g2 - f;
    s = std::move(s2);
    t = std::move(t2);
    f = g2;
    if (gain <= budget.gain_tol * std::max(1.0, f)) {
      capped = false;
      break;
    }
  }
  return f;
}

// Grid over s_1..s_{m-1} (s_0 = 1); t in closed form.
CVector bilinear_grid(const DenseMatrix& x, int points) {
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<cplx> roots(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / points);
  CVector s(m, 1.0), best = s;
  if (m == 1) return best;
  double best_val = -1.0;
  const std::size_t g = m - 2;  // outer grid dims; the last phase is the inner loop
  std::vector<std::size_t> idx(g, 0);
  CVector base(n);
  while (true) {
    for (std::size_t k = 0; k < g; ++k) s[k + 1] = roots[idx[k]];
    for (std::size_t j = 0; j < n; ++j) {
      cplx c{};
      for (std::size_t i = 0; i + 1 < m; ++i) c += s[i] * x(i, j);
      base[j] = c;
    }
    for (int p = 0; p < points; ++p) {
      const cplx z = roots[static_cast<std::size_t>(p)];
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += std::sqrt(std::norm(base[j] + z * x(m - 1, j)));
      if (v > best_val) {
        best_val = v;
        s[m - 1] = z;
        best = s;
      }
    }
    std::size_t k = 0;
    while (k < g && ++idx[k] == static_cast<std::size_t>(points)) idx[k++] = 0;
    if (k == g) break;
  }
  return best;
}

DenseMatrix block_of(const DenseMatrix& x, const RVector& a, const RVector& b) {
  const std::size_t m = x.rows(), n = x.cols();
  DenseMatrix blk(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) blk(i, i) = a[i];
  for (std::size_t j = 0; j < n; ++j) blk(m + j, m + j) = b[j];
  blk.set_block(0, m, x);
  blk.set_block(m, 0, x.adjoint());
  return blk;
}

}  // namespace

// ---------------------------------------------------------------------------

CVector TorusVector::vector() const {
  CVector u(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) u[i] = std::polar(1.0, phases[i]);
  return u;
}

TorusVector TorusVector::from_vector(std::span<const cplx> v) {
  TorusVector t;
  t.phases.resize(v.size());
  const double ref = v.empty() ? 0.0 : std::arg(phase(v[0]));
  for (std::size_t i = 0; i < v.size(); ++i) t.phases[i] = wrap(std::arg(phase(v[i])) - ref);
  if (!v.empty()) t.phases[0] = 0.0;
  return t;
}

bool TorusVector::is_real() const {
  for (double p : phases) {
    const double d = std::min({std::abs(p), std::abs(p - std::numbers::pi), std::abs(p - kTwoPi)});
    if (d > 1e-9) return false;
  }
  return true;
}

const char* to_string(BracketStatus s) {
  switch (s) {
    case BracketStatus::ok: return "ok";
    case BracketStatus::budget_exhausted: return "budget_exhausted";
    case BracketStatus::bound_violated: return "bound_violated";
  }
  return "unknown";
}

double quadratic_value(const DenseMatrix& h, std::span<const cplx> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    cplx row{};
    for (std::size_t j = 0; j < h.cols(); ++j) row += h(i, j) * u[j];
    s += (std::conj(u[i]) * row).real();
  }
  return s;
}

double bilinear_value(const DenseMatrix& x, std::span<const cplx> s, std::span<const cplx> t) {
  cplx v{};
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) v += s[i] * x(i, j) * t[j];
  return std::abs(v);
}

double certified_diag_upper(const DenseMatrix& p, const RVector& lambda) {
  double s = 0.0;
  for (double l : lambda) s += l;
  const double lo = min_eigenvalue(DenseMatrix::diagonal(std::span<const double>(lambda)) - p);
  return s + static_cast<double>(p.rows()) * std::max(0.0, -lo);
}

double certified_scaling_upper(const DenseMatrix& x, const RVector& a, const RVector& b) {
  double s = 0.0;
  for (double v : a) s += v;
  for (double v : b) s += v;
  const double lo = min_eigenvalue(block_of(x, a, b));
  return 0.5 * (s + static_cast<double>(x.rows() + x.cols()) * std::max(0.0, -lo));
}

NormBracket max_quadratic_torus(const DenseMatrix& h_in, const TorusBudget& budget, const Tolerances& tol) {
  if (!h_in.is_square()) throw Error(ErrorCode::dimension, "quadratic form needs a square matrix");
  if (h_in.rows() == 0) throw Error(ErrorCode::dimension, "empty matrix");
  if (hermitian_defect(h_in) > tol.hermitian_check * std::max(1.0, hs_norm(h_in)))
    throw Error(ErrorCode::not_hermitian, "quadratic form needs a Hermitian matrix");
  const DenseMatrix h = hermitian_part(h_in);
  const std::size_t n = h.rows();
  const double lmin = min_eigenvalue(h);
  const bool psd_input = lmin >= -tol.psd_reject * std::max(1.0, hs_norm(h));
  const double shift = std::max(0.0, -lmin);
  DenseMatrix hs = h;
  for (std::size_t i = 0; i < n; ++i) hs(i, i) += shift;

  Search best;
  auto consider = [&](CVector u) {
    bool capped = false;
    const double f = fixed_point(hs, u, budget, capped);
    if (improves(f, best.value)) {
      best.value = f;
      best.best = std::move(u);
      best.capped = capped;
    }
  };

  NormBracket out;
  if (n == 1) {
    best.best = CVector{1.0};
    best.value = hs(0, 0).real();
    out.lower_certified = true;
  } else {
    if (static_cast<int>(n) - 1 <= budget.grid_limit) {
      for (auto& u : quadratic_grid(hs, budget.grid_points, 4)) consider(std::move(u));
      out.lower_certified = true;
    }
    consider(CVector(n, 1.0));
    const HermitianEig e = hermitian_eig(hs, tol);
    consider(phases_of(e.eigenvectors.col(n - 1)));
    for (int s = 2; s < budget.starts; ++s) {
      Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(s)));
      consider(random_torus(n, rng));
    }
  }

  const TorusVector w = TorusVector::from_vector(best.best);
  out.vectors = {w};
  out.real_witness = w.is_real();
  out.lower = quadratic_value(h, w.vector());
  out.upper = INFINITY;
  if (best.capped) out.status = BracketStatus::budget_exhausted;

  if (budget.compute_upper) {
    RVector lambda;
    try {
      lambda = solve_diag_dominance(hs, tol).diag_left;
    } catch (const SdpNonConvergence& e) {
      lambda = e.last_iterate().y;
      out.status = BracketStatus::budget_exhausted;
      out.note = "relaxation stopped early; upper bound from its last feasible iterate";
    }
    out.upper = certified_diag_upper(hs, lambda) - shift * static_cast<double>(n);
    out.upper = std::max(out.upper, out.lower);
    if (psd_input && out.lower > 0.0 && out.upper > (kLittle + tol.bracket_slack) * out.lower) {
      out.status = BracketStatus::bound_violated;
      out.note = "upper/lower exceeds 4/pi";
    }
  }
  return out;
}

NormBracket max_bilinear_torus(const DenseMatrix& x_in, const TorusBudget& budget, const Tolerances& tol) {
  if (x_in.empty()) throw Error(ErrorCode::dimension, "empty matrix");
  const bool transposed = x_in.rows() > x_in.cols();
  const DenseMatrix x = transposed ? x_in.transpose() : x_in;
  const std::size_t m = x.rows();

  Search best;
  CVector best_t;
  auto consider = [&](CVector s) {
    CVector t;
    bool capped = false;
    const double f = alternate(x, s, t, budget, capped);
    if (improves(f, best.value)) {
      best.value = f;
      best.best = std::move(s);
      best_t = std::move(t);
      best.capped = capped;
    }
  };

  NormBracket out;
  if (static_cast<int>(m) - 1 <= budget.grid_limit) {
    consider(bilinear_grid(x, budget.grid_points));
    out.lower_certified = true;
  }
  consider(CVector(m, 1.0));
  const Svd sv = svd(x, tol);
  consider(phases_of(sv.U.col(0)));
  for (int s = 2; s < budget.starts; ++s) {
    Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(s)));
    consider(random_torus(m, rng));
  }

  TorusVector ws = TorusVector::from_vector(best.best);
  TorusVector wt = TorusVector::from_vector(best_t);
  if (transposed) std::swap(ws, wt);
  out.vectors = {ws, wt};
  out.real_witness = ws.is_real() && wt.is_real();
  out.lower = bilinear_value(x_in, ws.vector(), wt.vector());
  out.upper = INFINITY;
  if (best.capped) out.status = BracketStatus::budget_exhausted;

  if (budget.compute_upper) {
    RVector a, b;
    try {
      const SdpSolution s = solve_two_sided_scaling(x_in, ScalingMode::cbb, tol);
      a = s.diag_left;
      b = s.diag_right;
    } catch (const SdpNonConvergence&) {
      // Support restriction inside the solver makes the last iterate hard to
      // map back; fall back to the trivial scaling bound.
      const double op = op_norm(x_in);
      a.assign(x_in.rows(), op);
      b.assign(x_in.cols(), op);
      out.status = BracketStatus::budget_exhausted;
      out.note = "relaxation stopped early; upper bound from the operator norm scaling";
    }
    out.upper = std::max(certified_scaling_upper(x_in, a, b), out.lower);
    const double k = kLittle / (2.0 - kLittle);
    if (out.lower > 0.0 && out.upper > (k + tol.bracket_slack) * out.lower) {
      out.status = BracketStatus::bound_violated;
      out.note = "upper/lower exceeds k/(2-k)";
    }
  }
  return out;
}

std::vector<CVector> quadratic_local_maxima(const DenseMatrix& h_in, const TorusBudget& budget) {
  const DenseMatrix h = hermitian_part(h_in);
  const std::size_t n = h.rows();
  const double shift = std::max(0.0, -min_eigenvalue(h));
  DenseMatrix hs = h;
  for (std::size_t i = 0; i < n; ++i) hs(i, i) += shift;

  std::vector<std::pair<double, CVector>> found;
  auto run = [&](CVector u) {
    bool capped = false;
    const double f = fixed_point(hs, u, budget, capped);
    const CVector w = TorusVector::from_vector(u).vector();
    for (const auto& [v, other] : found) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(other[i] - w[i]));
      if (d < 1e-6) return;
    }
    found.emplace_back(f, w);
  };
  run(CVector(n, 1.0));
  run(phases_of(hermitian_eig(hs).eigenvectors.col(n - 1)));
  for (int s = 2; s < budget.starts; ++s) {
    Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(s)));
    run(random_torus(n, rng));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<CVector> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<std::pair<CVector, CVector>> bilinear_local_maxima(const DenseMatrix& x, const TorusBudget& budget) {
  const std::size_t m = x.rows();
  std::vector<std::tuple<double, CVector, CVector>> found;
  auto run = [&](CVector s) {
    CVector t;
    bool capped = false;
    const double f = alternate(x, s, t, budget, capped);
    // Rotate s so that s^T X t is real and positive.
    cplx v{};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) v += s[i] * x(i, j) * t[j];
    const cplx rot = std::conj(phase(v));
    for (auto& z : s) z *= rot;
    for (const auto& [val, os, ot] : found) {
      double d = 0.0;
      for (std::size_t i = 0; i < m; ++i) d = std::max(d, std::abs(os[i] - s[i]));
      for (std::size_t j = 0; j < t.size(); ++j) d = std::max(d, std::abs(ot[j] - t[j]));
      if (d < 1e-6) return;
    }
    found.emplace_back(f, std::move(s), std::move(t));
  };
  run(CVector(m, 1.0));
  run(phases_of(svd(x).U.col(0)));
  for (int s = 2; s < budget.starts; ++s) {
    Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(s)));
    run(random_torus(m, rng));
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<std::pair<CVector, CVector>> out;
  for (auto& f : found) out.emplace_back(std::move(std::get<1>(f)), std::move(std::get<2>(f)));
  return out;
}

}  // namespace groth
