#include <cmath>
#include <numbers>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/factorizations.hpp"
#include "groth/haagerup.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"

using namespace groth;

TEST_CASE("haagerup construction: all-ones 2x2") {
  const DenseMatrix x{{1, 1}, {1, 1}};
  const auto d = haagerup_construction(x);
  CHECK(d.u_certified);
  for (const cplx& z : d.u.vector()) CHECK(z == cplx(1.0, 0.0));
  CHECK(d.lambda[0] == doctest::Approx(4.0));
  CHECK(d.lambda[1] == doctest::Approx(4.0));
  CHECK(d.xi[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(d.f_norm == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(op_norm(scale_rows_cols(x, RVector{1, 1}, pseudo_inverse(d.xi))) == doctest::Approx(2 * std::sqrt(2.0)));

  const auto e = eigen_and_determinant_checks(x, d);
  CHECK(e.eigen_residual <= 1e-10);
  CHECK(e.status == CheckStatus::pass);
}

TEST_CASE("haagerup construction: diagonal and rank-one non-negative") {
  const DenseMatrix dg = DenseMatrix::diagonal(RVector{3.0, 1.0, 2.0});
  const auto d = haagerup_construction(dg);
  const double norm_d = std::sqrt(14.0);
  const RVector dv{3.0, 1.0, 2.0};
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(d.lambda[j] == doctest::Approx(dv[j] * dv[j]));
    CHECK(d.xi[j] == doctest::Approx(dv[j] / norm_d));
  }
  const auto e = eigen_and_determinant_checks(dg, d);
  CHECK(std::abs(e.det_haagerup) <= 1e-12);
  CHECK(std::abs(e.det_cbb) <= 1e-6 * e.scale_cbb);

  const CVector mu{1.0, 2.0}, nu{0.5, 3.0, 1.5};
  const auto r = haagerup_construction(DenseMatrix::outer(mu, nu));
  for (std::size_t j = 0; j < 3; ++j) CHECK(r.xi[j] == doctest::Approx(std::sqrt(nu[j].real() / 5.0)));
  CHECK_THROWS_AS(haagerup_construction(DenseMatrix(2, 2)), Error);
}

TEST_CASE("haagerup construction: invariants and the sqrt(2) chain") {
  Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 3, n = 2 + trial % 3;
    const DenseMatrix x = ginibre(m, n, rng);
    const auto d = haagerup_construction(x);
    const DenseMatrix p = x.adjoint() * x;
    const CVector u = d.u.vector();
    const CVector pu = p * std::span<const cplx>(u);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx lam = std::conj(u[j]) * pu[j];
      CHECK(std::abs(lam - d.lambda[j]) <= 1e-9 * d.f_norm * d.f_norm);
      sum += d.lambda[j];
      CHECK(d.xi[j] == doctest::Approx(std::sqrt(d.lambda[j]) / d.f_norm).epsilon(1e-9));
    }
    CHECK(sum == doctest::Approx(d.f_norm * d.f_norm).epsilon(1e-9));
    CHECK(d.u_certified);
    CHECK(op_norm(d.Z) <= std::sqrt(2.0) * (1 + d.u_gap) + 1e-3);

    const double cbf = norm(x, NormKind::cbF).lower;
    const double scaled = op_norm(scale_rows_cols(x, RVector(m, 1.0), pseudo_inverse(d.xi)));
    CHECK(d.f_norm <= cbf + 1e-7);
    CHECK(cbf <= scaled + 1e-7);
    CHECK(scaled <= std::sqrt(2.0) * d.f_norm + 1e-7);

    const auto e = eigen_and_determinant_checks(x, d);
    CHECK(e.eigen_residual <= 1e-6 * d.f_norm * d.f_norm);
    CHECK(std::abs(e.det_haagerup) <= 1e-6 * e.scale_haagerup);
  }
}

TEST_CASE("haagerup inequalities") {
  Rng rng(137);
  const DenseMatrix x = uniform_nonnegative(4, 5, rng);
  const auto d = haagerup_construction(x);
  const auto r = verify_haagerup_inequalities(x, d, 1000, 42);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.violations == 0);
  CHECK(r.equality_defect <= 1e-12 * d.f_norm * d.f_norm);
  CHECK(r.max_slack_real <= 1e-9);

  const DenseMatrix g = ginibre(3, 3, rng);
  const auto dg = haagerup_construction(g);
  CHECK(verify_haagerup_inequalities(g, dg, 500, 7).status == CheckStatus::pass);

  TorusBudget weak;
  weak.grid_limit = 0;
  const auto du = haagerup_construction(g, weak);
  CHECK(verify_haagerup_inequalities(g, du, 10, 7).status == CheckStatus::skipped);

  // Columnwise probes are exactly the column masses.
  const DenseMatrix p = x.adjoint() * x;
  for (std::size_t j = 0; j < 5; ++j) CHECK(p(j, j).real() <= d.lambda[j] + 1e-12);
}

TEST_CASE("non-negative closed forms") {
  const auto a = nonneg_closed_forms(DenseMatrix{{1, 1}, {1, 1}});
  CHECK(a.f_norm == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(a.cbf_norm == doctest::Approx(2 * std::sqrt(2.0)));
  DenseMatrix e11(2, 2);
  e11(0, 0) = 1.0;
  CHECK(nonneg_closed_forms(e11).f_norm == 1.0);
  CHECK_THROWS_AS(nonneg_closed_forms(DenseMatrix{{1, -1}}), Error);
  CHECK_THROWS_AS(nonneg_closed_forms(DenseMatrix{{1, cplx(0, 1)}}), Error);

  Rng rng(139);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix x = uniform_nonnegative(5, 4, rng);
    const auto c = nonneg_closed_forms(x);
    const auto b = norm(x, NormKind::cbF);
    CHECK(std::abs(b.lower - c.cbf_norm) <= 1e-6 * c.cbf_norm);
    CHECK(std::abs(b.upper - c.cbf_norm) <= 1e-6 * c.cbf_norm);
    const auto d = haagerup_construction(x);
    const auto v = cbf_vector(x);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(d.xi[j] - v.xi[j]) <= 1e-5);
      CHECK(c.lambda[j] == doctest::Approx(d.lambda[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("cbB bound chain") {
  const auto id = cbb_bound_chain(DenseMatrix::identity(3));
  CHECK(id.trace == doctest::Approx(3.0));
  CHECK(id.cbb_lower == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(id.middle_sum == doctest::Approx(3.0));
  CHECK(id.upper == doctest::Approx(9.0));
  CHECK(id.ordered);

  Rng rng(149);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = cbb_bound_chain(uniform_nonnegative(4, 4, rng));
    CHECK(c.ordered);
    CHECK(c.equality);
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = cbb_bound_chain(ginibre(2 + trial % 3, 2 + trial % 4, rng));
    CHECK(c.ordered);
    CHECK_FALSE(c.equality);
  }
}

TEST_CASE("determinant locus on random non-negative inputs") {
  Rng rng(151);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix x = uniform_nonnegative(4, 4, rng);
    const auto e = eigen_and_determinant_checks(x, haagerup_construction(x));
    CHECK(e.status == CheckStatus::pass);
    CHECK(std::abs(e.det_haagerup) <= 1e-6 * e.scale_haagerup);
    CHECK(std::abs(e.det_cbb) <= 1e-6 * e.scale_cbb);
  }
}
