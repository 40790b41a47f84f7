#pragma once

#include "groth/config.hpp"
#include "groth/matrix.hpp"

namespace groth {

/// X = Delta(eta) B Delta(xi) with eta, xi positive unit vectors and
/// ||B||_op = ||X||_cbB.
struct CbBFactorization {
  RVector eta;
  DenseMatrix B;
  RVector xi;
  double value = 0.0;  // ||X||_cbB as certified by the scaling program
};

/// Optimal cbF scaling: Z = X Delta(xi)^inv with ||Z||_op = ||X||_cbF.
struct CbfVector {
  RVector xi;
  DenseMatrix Z;
  double value = 0.0;
};

/// X = L* R; max column norms multiply to ||X||_S.
struct SchurFactorization {
  DenseMatrix L;  // k x m
  DenseMatrix R;  // k x n
  double value = 0.0;
};

/// X = D C with C = P^{1/2} Delta(xi), D = Delta(eta) W P^{1/2}, B = W P.
struct FactSplit {
  DenseMatrix C;
  DenseMatrix D;
  DenseMatrix W;
  DenseMatrix P;
  CbBFactorization cbb;
};

enum class DualityPair { cbb_s, t_cbf };

/// Y in the unit ball of the dual norm (S for cbB, cbF for T) with
/// Re Tr(Y* X) as close to the norm of X as the solver allows.
struct DualityWitness {
  DenseMatrix Y;
  double pairing = 0.0;  // Re Tr(Y* X)
  double value = 0.0;    // certified upper bound on the norm of X
};

/// Max column l2 norm.
double max_column_norm(const DenseMatrix& a);

CbBFactorization cbb_factorization(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);
CbfVector cbf_vector(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);
SchurFactorization schur_factorization(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);
FactSplit fact_split(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);
DualityWitness duality_witness(const DenseMatrix& x, DualityPair pair,
                               const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
