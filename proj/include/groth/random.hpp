#pragma once

#include <cstdint>
#include <random>

#include "groth/matrix.hpp"

namespace groth {

/// SplitMix64 step: the counter-based seed derivation used everywhere a
/// master seed fans out into per-sample or per-start streams.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  cplx complex_normal();  // E|z|^2 = 1
  cplx unit_phase();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Matrix ensembles shared by tests and experiments.
DenseMatrix ginibre(std::size_t m, std::size_t n, Rng& rng);
DenseMatrix real_gaussian(std::size_t m, std::size_t n, Rng& rng);
DenseMatrix uniform_nonnegative(std::size_t m, std::size_t n, Rng& rng);
DenseMatrix random_unitary(std::size_t n, Rng& rng);
/// Gram matrix of k random complex unit vectors in C^k: a point of the elliptope.
DenseMatrix random_elliptope(std::size_t n, std::size_t k, Rng& rng);
CVector random_complex_vector(std::size_t n, Rng& rng);
CVector random_torus(std::size_t n, Rng& rng);

}  // namespace groth
