#include <cmath>
#include <numbers>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/random.hpp"

using namespace groth;

namespace {

bool sdp_backed(NormKind k) {
  return k == NormKind::cbF || k == NormKind::cbB || k == NormKind::S || k == NormKind::T ||
         k == NormKind::op || k == NormKind::hs;
}

double value(const DenseMatrix& x, NormKind k) { return norm(x, k).lower; }

}  // namespace

TEST_CASE("norm kinds parse with aliases") {
  for (NormKind k : kAllNormKinds) CHECK(parse_norm_kind(to_string(k)) == k);
  CHECK(parse_norm_kind("h") == NormKind::S);
  CHECK(parse_norm_kind("H") == NormKind::S);
  CHECK(parse_norm_kind("gamma2") == NormKind::cbB);
  CHECK_FALSE(parse_norm_kind("frobenius").has_value());
}

TEST_CASE("rank-one closed forms") {
  const CVector ones{1.0, 1.0};
  const auto t = rank_one_closed_forms(ones, ones);
  CHECK(t.B == doctest::Approx(4.0));
  CHECK(t.cbB == doctest::Approx(4.0));

  const CVector d1{1.0, 0.0, 0.0};
  const auto u = rank_one_closed_forms(d1, d1);
  for (NormKind k : kAllNormKinds) CHECK(u.get(k) == doctest::Approx(1.0));

  const auto h = rank_one_closed_forms(ones, CVector{1.0, -1.0});
  CHECK(h.F == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(h.S == doctest::Approx(1.0));
  CHECK(h.T == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(rank_one_closed_forms(CVector{0.0}, ones), Error);
}

TEST_CASE("norm: worked examples") {
  CHECK(value(DenseMatrix{{1, 1}, {1, 1}}, NormKind::F) == doctest::Approx(2 * std::sqrt(2.0)));
  const auto cbf = norm(DenseMatrix{{1, 1}, {1, -1}}, NormKind::cbF);
  CHECK(cbf.lower == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(cbf.upper == doctest::Approx(2.0).epsilon(1e-8));

  Rng rng(79);
  const CVector s = random_torus(3, rng), t = random_torus(4, rng);
  const auto g = norm(DenseMatrix::outer(s, t), NormKind::proj_inf_inf);
  CHECK(g.lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g.upper == doctest::Approx(1.0).epsilon(1e-3));

  CHECK(value(DenseMatrix::identity(3), NormKind::op) == doctest::Approx(1.0));
  CHECK(value(DenseMatrix::identity(3), NormKind::hs) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("cross-norm property on random rank-one matrices") {
  Rng rng(83);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial * 5) % 4;
    const CVector mu = random_complex_vector(m, rng), nu = random_complex_vector(n, rng);
    const DenseMatrix x = DenseMatrix::outer(mu, nu);
    const auto table = rank_one_closed_forms(mu, nu);
    for (NormKind k : kAllNormKinds) {
      const auto b = norm(x, k);
      const double v = table.get(k);
      INFO(to_string(k), " m=", m, " n=", n);
      CHECK(b.lower <= b.upper + 1e-12);
      if (sdp_backed(k)) {
        CHECK(std::abs(b.lower - v) <= 1e-6 * v);
        CHECK(std::abs(b.upper - v) <= 1e-6 * v);
      } else {
        CHECK(b.lower <= v * (1 + 1e-6));
        CHECK(b.upper >= v * (1 - 1e-6));
      }
    }
  }
}

TEST_CASE("SDP-backed brackets are tight and certified") {
  Rng rng(89);
  for (int trial = 0; trial < 6; ++trial) {
    const DenseMatrix x = ginibre(2 + trial % 3, 2 + trial % 4, rng);
    for (NormKind k : {NormKind::cbF, NormKind::cbB, NormKind::S, NormKind::T}) {
      const auto b = norm(x, k);
      INFO(to_string(k));
      CHECK(b.status == BracketStatus::ok);
      CHECK(b.upper - b.lower <= 1e-7 * b.upper);
    }
  }
}

TEST_CASE("duality pairings and orderings") {
  Rng rng(97);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t m = 2 + trial % 3, n = 2 + (trial / 2) % 3;
    const DenseMatrix x = ginibre(m, n, rng), y = ginibre(m, n, rng);
    const double pairing = std::abs(inner(y, x));
    CHECK(pairing <= norm(x, NormKind::cbB).upper * norm(y, NormKind::S).upper + 1e-6);
    CHECK(pairing <= norm(x, NormKind::T).upper * norm(y, NormKind::cbF).upper + 1e-6);

    const auto f = norm(x, NormKind::F), cbf = norm(x, NormKind::cbF);
    const auto b = norm(x, NormKind::B), cbb = norm(x, NormKind::cbB);
    const auto s = norm(x, NormKind::S), proj = norm(x, NormKind::proj_inf_inf);
    CHECK(f.lower <= cbf.upper + 1e-9);
    CHECK(b.lower <= cbb.upper + 1e-9);
    CHECK(s.lower <= proj.upper + 1e-9);
    CHECK(proj.lower >= s.lower - 1e-12);

    double rows = 0.0;
    for (std::size_t i = 0; i < m; ++i) rows += std::pow(norm1(x.row(i)), 2);
    CHECK(f.upper <= std::sqrt(rows) + 1e-9);

    // Asserted constant ratios.
    CHECK(f.status != BracketStatus::bound_violated);
    CHECK(b.status != BracketStatus::bound_violated);
    CHECK(cbf.upper <= std::sqrt(4 / std::numbers::pi) * f.lower + 1e-6);
  }
}

TEST_CASE("gauges: mixtures reconstruct and brackets contain known values") {
  Rng rng(101);
  const DenseMatrix x = ginibre(3, 3, rng);
  const auto g = gauge_inf_inf(x);
  CHECK(g.bracket.lower <= g.bracket.upper);
  CHECK(hs_norm(g.mixture.implied() - x) <= 1e-6 * hs_norm(x));
  CHECK(g.mixture.gauge() <= g.bracket.upper + 1e-9);
  CHECK(g.bracket.upper <= 4 / std::numbers::pi / (2 - 4 / std::numbers::pi) * g.bracket.lower + 1e-6);

  const auto h = gauge_2_inf(x);
  CHECK(h.bracket.lower <= h.bracket.upper);
  CHECK(hs_norm(h.mixture.implied() - x) <= 1e-6 * hs_norm(x));
  for (const auto& a : h.mixture.atoms) CHECK(norm2(a.mu) == doctest::Approx(1.0));
  // proj_2_inf <= sqrt(4/pi) T
  CHECK(h.bracket.lower <= std::sqrt(4 / std::numbers::pi) * norm(x, NormKind::T).upper + 1e-6);

  DenseMatrix e11(2, 3);
  e11(0, 0) = 1.0;
  const auto ge = gauge_inf_inf(e11);
  CHECK(ge.bracket.lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ge.bracket.upper <= 1.0 + 1e-3);
}
