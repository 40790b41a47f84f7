#include <cmath>
#include <numbers>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/random.hpp"
#include "groth/torus.hpp"

using namespace groth;

namespace {

// Brute force over u = (1, e^{ia}, e^{ib}) on a uniform grid.
double quadratic_grid3(const DenseMatrix& h, int points) {
  double best = -INFINITY;
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b) {
      const CVector u{1.0, std::polar(1.0, 2 * std::numbers::pi * a / points),
                      std::polar(1.0, 2 * std::numbers::pi * b / points)};
      best = std::max(best, quadratic_value(h, u));
    }
  return best;
}

// Brute force over s on a grid for 3-row X; t optimal in closed form.
double bilinear_grid3(const DenseMatrix& x, int points) {
  double best = 0.0;
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b) {
      const CVector s{1.0, std::polar(1.0, 2 * std::numbers::pi * a / points),
                      std::polar(1.0, 2 * std::numbers::pi * b / points)};
      double v = 0.0;
      for (std::size_t j = 0; j < x.cols(); ++j) {
        cplx c{};
        for (std::size_t i = 0; i < 3; ++i) c += s[i] * x(i, j);
        v += std::abs(c);
      }
      best = std::max(best, v);
    }
  return best;
}

TorusBudget heuristic_only() {
  TorusBudget b;
  b.grid_limit = 0;
  return b;
}

}  // namespace

TEST_CASE("TorusVector normalizes the global phase") {
  const CVector v{std::polar(2.0, 1.0), std::polar(1.0, 2.5), cplx{}};
  const TorusVector t = TorusVector::from_vector(v);
  CHECK(t.phases[0] == 0.0);
  CHECK(t.phases[1] == doctest::Approx(1.5));
  CHECK(t.phases[2] == doctest::Approx(2 * std::numbers::pi - 1.0));
  for (const cplx& z : t.vector()) CHECK(std::abs(z) == doctest::Approx(1.0));
  CHECK(TorusVector::from_vector(CVector{1.0, -1.0, -2.0}).is_real());
  CHECK_FALSE(TorusVector::from_vector(CVector{1.0, cplx(0, 1)}).is_real());
}

TEST_CASE("quadratic torus: closed forms") {
  for (std::size_t n : {1u, 3u, 6u}) {
    const auto b = max_quadratic_torus(DenseMatrix::identity(n));
    CHECK(b.lower == doctest::Approx(double(n)));
    CHECK(b.upper == doctest::Approx(double(n)).epsilon(1e-8));
  }
  const auto ones = max_quadratic_torus(DenseMatrix{{1, 1}, {1, 1}});
  CHECK(ones.lower == doctest::Approx(4.0));
  CHECK(ones.upper == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(ones.real_witness);

  const DenseMatrix h{{1, cplx(0, 1)}, {cplx(0, -1), 1}};
  const auto hb = max_quadratic_torus(h);
  CHECK(hb.lower == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(quadratic_grid3(DenseMatrix{{1, cplx(0, 1), 0}, {cplx(0, -1), 1, 0}, {0, 0, 0}}, 1000) - 4.0) < 1e-3);
  CHECK_FALSE(hb.real_witness);

  CHECK_THROWS_AS(max_quadratic_torus(DenseMatrix{{1, 2}, {0, 1}}), Error);
}

TEST_CASE("quadratic torus: bracket invariants and scaling") {
  Rng rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const DenseMatrix g = ginibre(n, n, rng);
    const DenseMatrix p = g.adjoint() * g;
    const auto b = max_quadratic_torus(p);
    CHECK(b.lower <= b.upper + 1e-12);
    CHECK(b.status == BracketStatus::ok);
    CHECK(b.upper <= 4 / std::numbers::pi * b.lower + 1e-9);
    CHECK(std::abs(quadratic_value(p, b.vectors[0].vector()) - b.lower) <= 1e-9 * b.lower);
    const auto b3 = max_quadratic_torus(2.5 * p);
    CHECK(b3.lower == doctest::Approx(2.5 * b.lower).epsilon(1e-9));
    CHECK(b3.upper == doctest::Approx(2.5 * b.upper).epsilon(1e-8));
  }
  // Indefinite forms go through the shift.
  const DenseMatrix ind{{1, 2}, {2, -3}};
  const auto bi = max_quadratic_torus(ind);
  CHECK(bi.lower == doctest::Approx(2.0));
  CHECK(bi.upper >= bi.lower);
}

TEST_CASE("quadratic torus: heuristic matches a 360-point grid on 3x3") {
  Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix g = ginibre(3, 3, rng);
    const DenseMatrix p = g.adjoint() * g;
    const auto b = max_quadratic_torus(p, heuristic_only());
    CHECK(std::abs(b.lower - quadratic_grid3(p, 360)) <= 1e-3 * b.lower);
  }
}

TEST_CASE("bilinear torus: closed forms") {
  DenseMatrix e11(3, 2);
  e11(0, 0) = 1.0;
  const auto b = max_bilinear_torus(e11);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-8));

  const CVector mu{{1, 0}, {0, -2}, {0.5, 0.5}};
  const CVector nu{{3, 0}, {0, 1}};
  const auto r1 = max_bilinear_torus(DenseMatrix::outer(mu, nu));
  CHECK(r1.lower == doctest::Approx(norm1(mu) * norm1(nu)).epsilon(1e-12));
  CHECK(r1.upper == doctest::Approx(norm1(mu) * norm1(nu)).epsilon(1e-8));

  const auto h = max_bilinear_torus(DenseMatrix{{1, 1}, {1, -1}});
  CHECK(h.lower == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(bilinear_grid3(DenseMatrix{{1, 1}, {1, -1}, {0, 0}}, 720) - 2 * std::sqrt(2.0)) < 1e-3);
  CHECK_FALSE(h.real_witness);
  const auto& s = h.vectors[0];
  const auto& t = h.vectors[1];
  CHECK(bilinear_value(DenseMatrix{{1, 1}, {1, -1}}, s.vector(), t.vector()) ==
        doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("bilinear torus: nonnegative matrices give the entry sum exactly") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix x = uniform_nonnegative(1 + trial % 5, 1 + (trial * 7) % 6, rng);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) sum += x(i, j).real();
    const auto b = max_bilinear_torus(x);
    CHECK(b.lower == doctest::Approx(sum).epsilon(1e-15));
    CHECK(b.real_witness);
  }
}

TEST_CASE("bilinear torus: heuristic matches a 360-point grid on 3-row inputs") {
  Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix x = ginibre(3, 1 + trial % 4, rng);
    const auto b = max_bilinear_torus(x, heuristic_only());
    CHECK(std::abs(b.lower - bilinear_grid3(x, 360)) <= 1e-3 * b.lower);
    CHECK(b.lower <= b.upper + 1e-12);
    CHECK(b.status == BracketStatus::ok);
  }
}
