#pragma once

#include <functional>

#include "groth/config.hpp"
#include "groth/matrix.hpp"

namespace groth {

/// Spectral decomposition A = V diag(values) V* of a Hermitian matrix.
/// Eigenvalues ascend; each eigenvector's first non-negligible coordinate is
/// real and non-negative.
struct HermitianEig {
  RVector eigenvalues;
  DenseMatrix eigenvectors;
};

/// Thin singular value decomposition X = U diag(sigma) V*, k = min(m, n).
struct Svd {
  DenseMatrix U;     // m x k
  RVector sigma;     // descending, non-negative
  DenseMatrix V;     // n x k
};

/// B = W P with P = (B*B)^{1/2} (n x n) and W the minimal partial isometry
/// (m x n). Any shape.
struct PolarDecomposition {
  DenseMatrix W;
  DenseMatrix P;
};

HermitianEig hermitian_eig(const DenseMatrix& a, const Tolerances& tol = kDefaultTolerances);
Svd svd(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);
PolarDecomposition polar(const DenseMatrix& b, const Tolerances& tol = kDefaultTolerances);
DenseMatrix psd_sqrt(const DenseMatrix& p, const Tolerances& tol = kDefaultTolerances);

/// V f(Lambda) V* for Hermitian A.
DenseMatrix hermitian_function(const DenseMatrix& a, const std::function<double(double)>& f,
                               const Tolerances& tol = kDefaultTolerances);

/// Operator norm (largest singular value).
double op_norm(const DenseMatrix& x);
/// Trace (nuclear) norm, sum of singular values.
double trace_norm(const DenseMatrix& x);
double min_eigenvalue(const DenseMatrix& a);
/// Determinant of a Hermitian matrix as the product of its eigenvalues.
double hermitian_det(const DenseMatrix& a);

/// Throws not_psd when the smallest eigenvalue is below -tol.psd_reject.
void require_psd(const DenseMatrix& p, const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
