#include <cmath>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/factorizations.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"
#include "oracles.hpp"

using namespace groth;

namespace {

double rel_residual(const DenseMatrix& a, const DenseMatrix& b) { return hs_norm(a - b) / hs_norm(b); }

double unit_norm(const RVector& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("cbb factorization: closed forms") {
  const CVector ones{1.0, 1.0};
  const auto f = cbb_factorization(DenseMatrix::outer(ones, ones));
  for (double e : f.eta) CHECK(e == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
  for (double e : f.xi) CHECK(e == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
  CHECK(op_norm(f.B) == doctest::Approx(4.0).epsilon(1e-7));

  const auto t = cbb_factorization(DenseMatrix{{3.0}});
  CHECK(t.eta[0] == doctest::Approx(1.0));
  CHECK(t.xi[0] == doctest::Approx(1.0));
  CHECK(t.B(0, 0).real() == doctest::Approx(3.0).epsilon(1e-9));

  CHECK_THROWS_AS(cbb_factorization(DenseMatrix(2, 2)), Error);
}

TEST_CASE("cbb factorization: invariants on random inputs") {
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 5, n = 1 + (trial / 5) % 5;
    const DenseMatrix x = ginibre(m, n, rng);
    const auto f = cbb_factorization(x);
    CHECK(rel_residual(scale_rows_cols(f.B, f.eta, f.xi), x) <= 1e-7);
    CHECK(unit_norm(f.eta) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(unit_norm(f.xi) == doctest::Approx(1.0).epsilon(1e-10));
    if (trial % 10 == 0) {
      const double cbb = norm(x, NormKind::cbB).lower;
      CHECK(std::abs(op_norm(f.B) - cbb) <= 1e-6 * cbb);
    }
  }
  // A zero row gets eta = 0 and still reconstructs.
  DenseMatrix z{{1, 2}, {0, 0}, {cplx(0, 1), -1}};
  const auto f = cbb_factorization(z);
  CHECK(f.eta[1] == 0.0);
  CHECK(rel_residual(scale_rows_cols(f.B, f.eta, f.xi), z) <= 1e-7);
}

TEST_CASE("cbf vector: closed forms and optimality") {
  const CVector mu{{1, 1}, {0, 2}}, nu{{3, 0}, {0, -1}, {0.5, 0.5}};
  const auto r = cbf_vector(DenseMatrix::outer(mu, nu));
  for (std::size_t j = 0; j < nu.size(); ++j)
    CHECK(r.xi[j] == doctest::Approx(std::sqrt(std::abs(nu[j]) / norm1(nu))).epsilon(1e-6));

  const auto id = cbf_vector(DenseMatrix::identity(4));
  for (double e : id.xi) CHECK(e == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(op_norm(id.Z) == doctest::Approx(2.0).epsilon(1e-8));

  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix x = ginibre(3, 2 + trial % 3, rng);
    const auto c = cbf_vector(x);
    const double cbf = norm(x, NormKind::cbF).lower;
    CHECK(std::abs(op_norm(c.Z) - cbf) <= 1e-6 * cbf);
    CHECK(unit_norm(c.xi) == doctest::Approx(1.0).epsilon(1e-10));
    // No other positive unit vector scales better.
    for (int k = 0; k < 20; ++k) {
      std::vector<double> w(x.cols());
      for (auto& a : w) a = rng.uniform(0.05, 1.0);
      const RVector xi = oracle::positive_unit(w);
      const RVector ones(x.rows(), 1.0);
      CHECK(op_norm(scale_rows_cols(x, ones, pseudo_inverse(xi))) >= cbf - 1e-6);
    }
  }
}

TEST_CASE("schur factorization") {
  DenseMatrix e11(2, 3);
  e11(0, 0) = 1.0;
  const auto f = schur_factorization(e11);
  CHECK(rel_residual(f.L.adjoint() * f.R, e11) <= 1e-7);
  CHECK(f.value == doctest::Approx(1.0).epsilon(1e-6));

  const CVector mu{{1, 0}, {0, -3}, {0.5, 0.5}}, nu{{2, 1}, {0, 1}};
  const auto g = schur_factorization(DenseMatrix::outer(mu, nu));
  CHECK(g.value == doctest::Approx(norm_inf(mu) * norm_inf(nu)).epsilon(1e-6));

  Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial / 4) % 5;
    const DenseMatrix x = ginibre(m, n, rng);
    const auto s = schur_factorization(x);
    CHECK(s.L.rows() <= m + n);
    CHECK(rel_residual(s.L.adjoint() * s.R, x) <= 1e-7);
    if (trial % 10 == 0) {
      const double v = norm(x, NormKind::S).lower;
      CHECK(std::abs(max_column_norm(s.L) * max_column_norm(s.R) - v) <= 1e-6 * v);
    }
    // Leading column of L is real and non-negative.
    for (std::size_t r = 0; r < s.L.rows(); ++r) {
      CHECK(s.L(r, 0).imag() == doctest::Approx(0.0));
      CHECK(s.L(r, 0).real() >= 0.0);
    }
  }
}

TEST_CASE("fact split: X = D C with balanced cbF norms") {
  const CVector mu{{1, 0}, {2, 0}}, nu{{0, 1}, {1, 1}, {-1, 0}};
  const auto r = fact_split(DenseMatrix::outer(mu, nu));
  CHECK(norm(r.C, NormKind::cbF).lower == doctest::Approx(std::sqrt(norm1(mu) * norm1(nu))).epsilon(1e-5));

  const auto id = fact_split(DenseMatrix::identity(2));
  CHECK(hs_norm(id.D * id.C - DenseMatrix::identity(2)) <= 1e-8);

  Rng rng(113);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    const DenseMatrix x = ginibre(m, n, rng);
    const auto s = fact_split(x);
    CHECK(rel_residual(s.D * s.C, x) <= 1e-7);
    CHECK(rel_residual(s.W * s.P, s.cbb.B) <= 1e-9);
    if (trial % 5 == 0) {
      const double root = std::sqrt(norm(x, NormKind::cbB).lower);
      CHECK(std::abs(norm(s.C, NormKind::cbF).lower - root) <= 1e-5 * root);
      CHECK(std::abs(norm(s.D.adjoint(), NormKind::cbF).lower - root) <= 1e-5 * root);
    }
  }
}

TEST_CASE("duality witnesses") {
  DenseMatrix e11(2, 2);
  e11(0, 0) = 1.0;
  const auto w = duality_witness(e11, DualityPair::cbb_s);
  CHECK(hs_norm(w.Y - e11) <= 1e-6);

  Rng rng(127);
  for (int trial = 0; trial < 8; ++trial) {
    const DenseMatrix x = ginibre(3, 3, rng);
    const auto a = duality_witness(x, DualityPair::cbb_s);
    CHECK(norm(a.Y, NormKind::S).upper <= 1 + 1e-7);
    CHECK(a.pairing >= a.value * (1 - 1e-6));
    const auto b = duality_witness(x, DualityPair::t_cbf);
    CHECK(norm(b.Y, NormKind::cbF).upper <= 1 + 1e-7);
    CHECK(b.pairing >= b.value * (1 - 1e-6));
  }
}
