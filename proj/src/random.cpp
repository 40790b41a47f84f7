#include "groth/random.hpp"

#include <cmath>
#include <numbers>

#include "groth/linalg.hpp"

namespace groth {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master + index * 0x9e3779b97f4a7c15ULL;
  return splitmix64(state);
}

double Rng::uniform(double lo, double hi) {
  // 53 random mantissa bits; avoids implementation-defined distributions so
  // streams are identical across standard libraries.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

cplx Rng::unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

DenseMatrix ginibre(std::size_t m, std::size_t n, Rng& rng) {
  DenseMatrix x(m, n);
  for (auto& z : x.entries()) z = rng.complex_normal();
  return x;
}

DenseMatrix real_gaussian(std::size_t m, std::size_t n, Rng& rng) {
  DenseMatrix x(m, n);
  for (auto& z : x.entries()) z = rng.normal();
  return x;
}

DenseMatrix uniform_nonnegative(std::size_t m, std::size_t n, Rng& rng) {
  DenseMatrix x(m, n);
  for (auto& z : x.entries()) z = rng.uniform();
  return x;
}

DenseMatrix random_unitary(std::size_t n, Rng& rng) {
  const Svd s = svd(ginibre(n, n, rng));
  return s.U * s.V.adjoint();
}

DenseMatrix random_elliptope(std::size_t n, std::size_t k, Rng& rng) {
  DenseMatrix g = ginibre(k, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    CVector c = g.col(j);
    const double nc = norm2(c);
    for (auto& z : c) z /= nc;
    g.set_col(j, c);
  }
  DenseMatrix q = g.adjoint() * g;
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  return hermitian_part(q);
}

CVector random_complex_vector(std::size_t n, Rng& rng) {
  CVector v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

CVector random_torus(std::size_t n, Rng& rng) {
  CVector v(n);
  for (auto& z : v) z = rng.unit_phase();
  return v;
}

}  // namespace groth
