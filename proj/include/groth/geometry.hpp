#pragma once

#include <string>
#include <vector>

#include "groth/config.hpp"
#include "groth/matrix.hpp"
#include "groth/norms.hpp"
#include "groth/torus.hpp"

namespace groth {

/// Convex combination of rank-one matrices A(u)_ij = conj(u_i) u_j with u
/// unimodular: a point of the set R_n.
struct RAtomMixture {
  std::size_t n = 0;
  std::vector<TorusVector> atoms;
  RVector weights;

  DenseMatrix implied() const;
  /// Adds w to an atom, merging with one within phase distance 1e-6.
  void add(const TorusVector& u, double w);
};

/// The rank-one matrix conj(u) u^T.
DenseMatrix r_atom(std::span<const cplx> u);

struct GeoBudget {
  int max_iters = 5000;
  double feas_tol = 1e-3;   // success iff lambda_min(alpha R - Q) >= -feas_tol
  int line_probes = 40;     // golden-section probes per step
  int corrective_every = 5;   // re-optimize all weights every this many steps (0: never)
};

/// Q = alpha R - P with R in R_n and P PSD (when status succeeds).
struct GeoDecomposition {
  double alpha = 1.0;
  RAtomMixture R;
  DenseMatrix P;
  double min_eig_achieved = -INFINITY;
  int iterations = 0;
  bool success = false;
  RVector history;  // lambda_min after each accepted step
};

/// Throws domain error unless q is Hermitian PSD with unit diagonal (1e-8).
void require_elliptope(const DenseMatrix& q, const Tolerances& tol = kDefaultTolerances);

/// Frank-Wolfe maximization of lambda_min(alpha R - Q) over R in R_n.
GeoDecomposition decompose_geo(const DenseMatrix& q, double alpha, const GeoBudget& budget = {},
                               const Tolerances& tol = kDefaultTolerances);

/// Q ~ R_plus / (2 - alpha) - (alpha - 1) / (2 - alpha) R_minus by recursing
/// on the remainder P / (alpha - 1).
struct Geo2Result {
  double alpha = 1.0;
  RAtomMixture R_plus;
  RAtomMixture R_minus;
  double residual = 0.0;  // HS norm of the reconstruction error
  int depth_reached = 0;
  int failure_depth = -1;  // first level whose decomposition failed
  bool success = false;
};

Geo2Result decompose_geo2(const DenseMatrix& q, double alpha, int depth, const GeoBudget& budget = {},
                          const Tolerances& tol = kDefaultTolerances);

/// Decomposition of X (with ||X||_S = 1) into unimodular rank-one atoms.
struct VMembership {
  double rho = 0.0;           // sum of |coefficients|
  double rho_geometric = 0.0; // before the LP polish: alpha / (2 - alpha) weights
  double residual = 0.0;      // HS norm of X - implied
  AtomMixtureV mixture;
  Geo2Result geo;
};

VMembership v_membership(const DenseMatrix& x, double alpha = 4.0 / 3.141592653589793,
                         const GeoBudget& budget = {}, const Tolerances& tol = kDefaultTolerances);

struct AlphaFeasibility {
  bool feasible = false;
  double min_eig_achieved = -INFINITY;
  double residual = 0.0;  // two-sided only: ||alpha R1 - (alpha-1) R2 - Q||_HS
  RAtomMixture R1;
  RAtomMixture R2;        // two-sided only
  int iterations = 0;
};

/// One-sided: Q in alpha R_n - PSD. Two-sided: Q = alpha R1 - (alpha - 1) R2
/// with R1, R2 in R_n, searched by Frank-Wolfe on the squared residual.
AlphaFeasibility alpha_feasibility(const DenseMatrix& q, double alpha, bool two_sided = false,
                                   const GeoBudget& budget = {}, const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
