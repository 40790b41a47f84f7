#include <cmath>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/random.hpp"

using namespace groth;

namespace {

DenseMatrix diag_times(const DenseMatrix& v, const RVector& d) {
  DenseMatrix out = v;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) out(i, j) *= d[j];
  return out;
}

}  // namespace

TEST_CASE("hermitian_eig: identity and swap") {
  const auto e = hermitian_eig(DenseMatrix::identity(3));
  for (double v : e.eigenvalues) CHECK(v == doctest::Approx(1.0));

  const auto s = hermitian_eig(DenseMatrix{{0, 1}, {1, 0}});
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig: recovers a planted spectrum") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix v = random_unitary(3, rng);
    const RVector spectrum{1.0, 2.0, 5.0};
    const DenseMatrix a = diag_times(v, spectrum) * v.adjoint();
    const auto e = hermitian_eig(a);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e.eigenvalues[i] - spectrum[i]) < 1e-9);
  }
}

TEST_CASE("hermitian_eig: reconstruction, orthonormality, phase convention") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const DenseMatrix g = ginibre(n, n, rng);
    const DenseMatrix a = hermitian_part(g);
    const auto e = hermitian_eig(a);
    const auto& v = e.eigenvectors;
    CHECK(hs_norm(a * v - diag_times(v, e.eigenvalues)) <= 1e-10 * (1 + hs_norm(a)));
    CHECK(hs_norm(v.adjoint() * v - DenseMatrix::identity(n)) <= 1e-10);
    for (std::size_t i = 1; i < n; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v(i, j)) > 1e-12) {
          CHECK(v(i, j).imag() == 0.0);
          CHECK(v(i, j).real() >= 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("hermitian_eig: error paths") {
  CHECK_THROWS_AS(hermitian_eig(DenseMatrix(2, 3)), Error);
  try {
    hermitian_eig(DenseMatrix{{1, 2}, {0, 1}});
    FAIL("expected not-Hermitian error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_hermitian);
  }
}

TEST_CASE("svd: diagonal, rank one and random reconstruction") {
  const auto d = svd(DenseMatrix{{3, 0}, {0, -4}});
  CHECK(d.sigma[0] == doctest::Approx(4.0));
  CHECK(d.sigma[1] == doctest::Approx(3.0));

  const CVector a{{1, 1}, {2, 0}, {0, -1}};
  const CVector b{{0.5, 0}, {0, 2}};
  const auto r = svd(DenseMatrix::outer(a, b));
  CHECK(r.sigma[0] == doctest::Approx(norm2(a) * norm2(b)));
  CHECK(r.sigma[1] < 1e-12);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + trial % 5, n = 1 + (trial * 3) % 4;
    const DenseMatrix x = ginibre(m, n, rng);
    const auto s = svd(x);
    DenseMatrix us = s.U;
    for (std::size_t i = 0; i < us.rows(); ++i)
      for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= s.sigma[j];
    CHECK(hs_norm(x - us * s.V.adjoint()) <= 1e-10);
    for (std::size_t j = 1; j < s.sigma.size(); ++j) CHECK(s.sigma[j - 1] >= s.sigma[j]);
  }
  // 4x3 case named explicitly
  const DenseMatrix x = ginibre(4, 3, rng);
  const auto s = svd(x);
  DenseMatrix us = s.U;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) us(i, j) *= s.sigma[j];
  CHECK(hs_norm(x - us * s.V.adjoint()) <= 1e-10);
}

TEST_CASE("spectral radius of Hermitian matrices equals the operator norm") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const DenseMatrix a = hermitian_part(ginibre(5, 5, rng));
    const auto e = hermitian_eig(a);
    const double rho = std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    CHECK(std::abs(rho - op_norm(a)) <= 1e-9);
  }
}

TEST_CASE("polar: identity, sign and random") {
  const auto pi = polar(DenseMatrix::identity(3));
  CHECK(hs_norm(pi.W - DenseMatrix::identity(3)) < 1e-12);
  CHECK(hs_norm(pi.P - DenseMatrix::identity(3)) < 1e-12);

  const auto ps = polar(DenseMatrix{{-2}});
  CHECK(ps.W(0, 0).real() == doctest::Approx(-1.0));
  CHECK(ps.P(0, 0).real() == doctest::Approx(2.0));

  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseMatrix b = ginibre(5, 5, rng);
    const auto p = polar(b);
    CHECK(hs_norm(b - p.W * p.P) <= 1e-9);
    CHECK(min_eigenvalue(p.P) >= -1e-10);
  }
  const DenseMatrix b4 = ginibre(4, 4, rng);
  const auto p4 = polar(b4);
  CHECK(hs_norm(p4.P * p4.P - b4.adjoint() * b4) <= 1e-10 * (1 + hs_norm(b4)));
  CHECK(hs_norm(p4.W.adjoint() * p4.W - DenseMatrix::identity(4)) <= 1e-10);

  for (auto [m, n] : {std::pair{2, 4}, std::pair{4, 2}}) {
    const DenseMatrix r = ginibre(m, n, rng);
    const auto pr = polar(r);
    CHECK(pr.W.rows() == std::size_t(m));
    CHECK(pr.P.rows() == std::size_t(n));
    CHECK(hs_norm(r - pr.W * pr.P) <= 1e-10);
    CHECK(hs_norm(pr.P * pr.P - r.adjoint() * r) <= 1e-10 * (1 + hs_norm(r)));
  }
}

TEST_CASE("polar: rank deficiency gives the minimal partial isometry") {
  const CVector a{{1, 0}, {1, 1}, {0, 2}};
  const CVector b{{2, 0}, {0, -1}, {1, 0}};
  const DenseMatrix rank1 = DenseMatrix::outer(a, b);
  const auto p = polar(rank1);
  CHECK(hs_norm(rank1 - p.W * p.P) <= 1e-10);
  // W*W projects onto range(P): idempotent, trace one.
  const DenseMatrix proj = p.W.adjoint() * p.W;
  CHECK(hs_norm(proj * proj - proj) <= 1e-10);
  CHECK(std::abs(trace(proj) - 1.0) <= 1e-10);
  CHECK(hs_norm(proj * p.P - p.P) <= 1e-10);
}

TEST_CASE("psd_sqrt: closed forms, Gram matrices and rejection") {
  CHECK(hs_norm(psd_sqrt(DenseMatrix::identity(3)) - DenseMatrix::identity(3)) < 1e-12);
  const auto s = psd_sqrt(DenseMatrix{{4, 0}, {0, 9}});
  CHECK(s(0, 0).real() == doctest::Approx(2.0));
  CHECK(s(1, 1).real() == doctest::Approx(3.0));

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix g = ginibre(4, 4, rng);
    const DenseMatrix p = g.adjoint() * g;
    const DenseMatrix r = psd_sqrt(p);
    CHECK(hs_norm(r * r - p) <= 1e-9 * (1 + hs_norm(p)));
    CHECK(min_eigenvalue(r) >= -1e-12);
  }

  try {
    psd_sqrt(DenseMatrix{{1, 0}, {0, -1}});
    FAIL("expected not-PSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_psd);
  }
  // Eigenvalues within the clamp window are accepted as zero.
  const auto clamped = psd_sqrt(DenseMatrix{{1, 0}, {0, -1e-10}});
  CHECK(clamped(1, 1).real() == 0.0);
}

TEST_CASE("psd_sqrt is monotone on commuting diagonal pairs") {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    RVector d1(4), d2(4);
    for (std::size_t i = 0; i < 4; ++i) {
      d1[i] = rng.uniform(0, 5);
      d2[i] = d1[i] + rng.uniform(0, 5);
    }
    const auto s1 = psd_sqrt(DenseMatrix::diagonal(std::span<const double>(d1)));
    const auto s2 = psd_sqrt(DenseMatrix::diagonal(std::span<const double>(d2)));
    for (std::size_t i = 0; i < 4; ++i) CHECK(s1(i, i).real() <= s2(i, i).real());
  }
}

TEST_CASE("DenseMatrix rejects malformed input") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<cplx>(3)), Error);
  std::vector<cplx> bad(4);
  bad[2] = std::nan("");
  CHECK_THROWS_AS(DenseMatrix(2, 2, bad), Error);
}
