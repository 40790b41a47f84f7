#include <cmath>
#include <numbers>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/geometry.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"

using namespace groth;

namespace {

constexpr double kLittle = 4 / std::numbers::pi;

double weight_sum(const RAtomMixture& m) {
  double s = 0.0;
  for (double w : m.weights) s += w;
  return s;
}

// Unit diagonal, Hermitian, PSD.
void check_elliptope(const DenseMatrix& r, double tol) {
  CHECK(hermitian_defect(r) <= tol);
  for (std::size_t i = 0; i < r.rows(); ++i) CHECK(std::abs(r(i, i) - 1.0) <= tol);
  CHECK(min_eigenvalue(hermitian_part(r)) >= -tol);
}

}  // namespace

TEST_CASE("R atoms and mixtures") {
  const CVector u{1.0, cplx(0, 1), -1.0};
  const DenseMatrix a = r_atom(u);
  CHECK(a(0, 1) == cplx(0, 1));
  CHECK(a(1, 0) == cplx(0, -1));
  check_elliptope(a, 1e-15);

  RAtomMixture m;
  m.n = 3;
  m.add(TorusVector::from_vector(u), 0.25);
  m.add(TorusVector::from_vector(CVector{cplx(0, 1), -1.0, cplx(0, -1)}), 0.75);  // same atom, rotated
  CHECK(m.atoms.size() == 1);
  CHECK(m.weights[0] == doctest::Approx(1.0));
  CHECK(hs_norm(m.implied() - a) <= 1e-12);
}

TEST_CASE("linear oracle: ||v||_1^2 dominates torus probes") {
  Rng rng(157);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector v = random_complex_vector(4, rng);
    CVector u(4);
    for (std::size_t j = 0; j < 4; ++j) u[j] = std::conj(phase(v[j]));
    cplx s{};
    for (std::size_t j = 0; j < 4; ++j) s += u[j] * v[j];
    CHECK(std::norm(s) == doctest::Approx(std::pow(norm1(v), 2)).epsilon(1e-12));
    for (int k = 0; k < 1000; ++k) {
      const CVector w = random_torus(4, rng);
      cplx t{};
      for (std::size_t j = 0; j < 4; ++j) t += w[j] * v[j];
      CHECK(std::norm(t) <= std::norm(s) + 1e-12);
    }
  }
}

TEST_CASE("decompose_geo: closed forms and input checks") {
  const auto id = decompose_geo(DenseMatrix::identity(4), 1.0);
  CHECK(id.success);
  CHECK(hs_norm(id.P) <= 1e-9);
  CHECK(hs_norm(id.R.implied() - DenseMatrix::identity(4)) <= 1e-9);

  Rng rng(163);
  const DenseMatrix atom = r_atom(random_torus(4, rng));
  const auto d = decompose_geo(atom, 1.0);
  CHECK(d.success);
  CHECK(hs_norm(d.R.implied() - atom) <= 1e-6);
  CHECK(hs_norm(d.P) <= 1e-6);

  CHECK_THROWS_AS(decompose_geo(DenseMatrix{{2, 0}, {0, 1}}, 1.3), Error);
  CHECK_THROWS_AS(decompose_geo(DenseMatrix{{1, 2}, {2, 1}}, 1.3), Error);
  CHECK_THROWS_AS(decompose_geo(DenseMatrix::identity(2), 0.9), Error);
}

TEST_CASE("decompose_geo: random elliptope points at alpha 1.35") {
  Rng rng(167);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const DenseMatrix q = random_elliptope(n, n, rng);
    const double alpha = 1.35;
    const auto d = decompose_geo(q, alpha);
    INFO("n=", n);
    CHECK(d.success);
    CHECK(d.min_eig_achieved >= -1e-3);
    CHECK(d.iterations <= 5000);
    const DenseMatrix r = d.R.implied();
    check_elliptope(r, 1e-9);
    CHECK(weight_sum(d.R) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hs_norm(alpha * r - q - d.P) <= 1e-7);
    CHECK(min_eigenvalue(d.P) >= -1e-6);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d.P(i, i) - (alpha - 1.0)) <= 1e-6);
    for (std::size_t k = 1; k < d.history.size(); ++k) CHECK(d.history[k] >= d.history[k - 1]);
  }
}

TEST_CASE("decompose_geo2") {
  const auto id = decompose_geo2(DenseMatrix::identity(3), kLittle, 40);
  CHECK(id.success);
  CHECK(id.residual <= 1e-6);
  CHECK(1 / (2 - kLittle) - (kLittle - 1) / (2 - kLittle) == doctest::Approx(1.0).epsilon(1e-15));

  Rng rng(173);
  const DenseMatrix atom = r_atom(random_torus(3, rng));
  const auto a = decompose_geo2(atom, 1.35, 10);
  CHECK(hs_norm(a.R_plus.implied() - atom) <= 1e-6);
  CHECK(hs_norm(a.R_minus.implied() - atom) <= 1e-6);

  for (int trial = 0; trial < 4; ++trial) {
    const DenseMatrix q = random_elliptope(3, 3, rng);
    const auto g = decompose_geo2(q, 1.35, 40);
    CHECK(g.success);
    CHECK(g.residual <= 1e-3);
    check_elliptope(g.R_plus.implied(), 1e-9);
    check_elliptope(g.R_minus.implied(), 1e-9);
    CHECK(weight_sum(g.R_plus) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(decompose_geo2(DenseMatrix::identity(2), 2.0, 5), Error);
}

TEST_CASE("v_membership") {
  Rng rng(179);
  const CVector s = random_torus(2, rng), t = random_torus(3, rng);
  const DenseMatrix atom = DenseMatrix::outer(s, t);
  const auto va = v_membership(atom);
  CHECK(va.rho == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(va.residual <= 1e-3);

  DenseMatrix e11(2, 2);
  e11(0, 0) = 1.0;
  const auto ve = v_membership(e11);
  CHECK(ve.rho <= 1.01);
  CHECK(ve.residual <= 1e-3);

  for (int trial = 0; trial < 3; ++trial) {
    DenseMatrix x = ginibre(3, 3, rng);
    x *= 1.0 / norm(x, NormKind::S).upper;
    const auto v = v_membership(x);
    CHECK(v.residual <= 1e-3);
    CHECK(v.rho <= 1.762);
    CHECK(v.rho_geometric <= kLittle / (2 - kLittle) + 1e-2);
    CHECK(v.rho >= norm(x, NormKind::S).lower - 1e-6);
  }
  CHECK_THROWS_AS(v_membership(2.0 * e11), Error);
}

TEST_CASE("alpha feasibility") {
  for (double alpha : {1.0, 1.2, 1.5}) CHECK(alpha_feasibility(DenseMatrix::identity(3), alpha).feasible);

  Rng rng(181);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = alpha_feasibility(random_elliptope(5, 5, rng), kLittle + 0.05);
    CHECK(f.feasible);
  }
  // Two-sided variant: exploratory, only the bookkeeping is asserted.
  const DenseMatrix q = random_elliptope(3, 3, rng);
  GeoBudget b;
  b.max_iters = 200;
  const auto two = alpha_feasibility(q, 1.3, true, b);
  CHECK(std::isfinite(two.residual));
  CHECK(weight_sum(two.R1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(weight_sum(two.R2) == doctest::Approx(1.0).epsilon(1e-9));
  const DenseMatrix e = 1.3 * two.R1.implied() - 0.3 * two.R2.implied() - q;
  CHECK(hs_norm(e) == doctest::Approx(two.residual).epsilon(1e-9));
}
