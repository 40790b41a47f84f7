#pragma once

#include <string>
#include <utility>
#include <vector>

#include "groth/config.hpp"
#include "groth/matrix.hpp"

namespace groth {

/// A unimodular vector stored by its phases; phases[0] is 0 by convention.
struct TorusVector {
  RVector phases;

  CVector vector() const;
  std::size_t size() const noexcept { return phases.size(); }
  /// Phases of v (phase(0) = 1), rotated so the first one is zero.
  static TorusVector from_vector(std::span<const cplx> v);
  /// True when every entry is +1 or -1 within 1e-9.
  bool is_real() const;
};

enum class BracketStatus {
  ok,
  budget_exhausted,  // heuristic or solver stopped on its budget
  bound_violated,    // an asserted constant ratio failed; never silent
};

const char* to_string(BracketStatus s);

/// Certified interval for a norm value plus whatever achieves the lower end.
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  BracketStatus status = BracketStatus::ok;
  bool lower_certified = false;  // lower confirmed by an exhaustive phase grid
  bool real_witness = false;     // best torus witness uses real phases only
  std::vector<TorusVector> vectors;
  DenseMatrix matrix;            // matrix-valued witness, when there is one
  std::string note;

  double width() const { return upper - lower; }
};

/// max u*Hu over unimodular u. Lower from multistart fixed-point iteration
/// u <- phase(Hu) (plus an exhaustive grid for few phases); upper from the
/// elliptope relaxation of the PSD shift H + cI.
NormBracket max_quadratic_torus(const DenseMatrix& h, const TorusBudget& budget = {},
                                const Tolerances& tol = kDefaultTolerances);

/// max |s^T X t| over unimodular s, t (the B norm). Upper bound is the cbB
/// norm from the two-sided scaling program.
NormBracket max_bilinear_torus(const DenseMatrix& x, const TorusBudget& budget = {},
                               const Tolerances& tol = kDefaultTolerances);

/// Distinct local maxima of the multistart searches, best first (no grid, no
/// relaxation). Used as atom generators by the gauge solvers.
std::vector<CVector> quadratic_local_maxima(const DenseMatrix& h, const TorusBudget& budget = {});
std::vector<std::pair<CVector, CVector>> bilinear_local_maxima(const DenseMatrix& x,
                                                               const TorusBudget& budget = {});

/// Objective values used by the searches (recomputed from witnesses).
double quadratic_value(const DenseMatrix& h, std::span<const cplx> u);
double bilinear_value(const DenseMatrix& x, std::span<const cplx> s, std::span<const cplx> t);

/// sum lambda + n * max(0, -lambda_min(Delta(lambda) - P)): an upper bound on
/// the elliptope program for P that stays valid when lambda is slightly off.
double certified_diag_upper(const DenseMatrix& p, const RVector& lambda);
/// Same idea for the two-sided program: (sum a + sum b)/2 corrected by the
/// most negative eigenvalue of [[Delta(a), X], [X*, Delta(b)]].
double certified_scaling_upper(const DenseMatrix& x, const RVector& a, const RVector& b);

}  // namespace groth
