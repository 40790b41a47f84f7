#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "groth/config.hpp"
#include "groth/errors.hpp"
#include "groth/matrix.hpp"

namespace groth {

// ---------------------------------------------------------------------------
// Generic conic program over Hermitian PSD blocks and one non-negative
// orthant block, in the "design variable" form
//
//     maximize   b^T y
//     subject to S_blk = C_blk - sum_k y_k A_{k,blk}  is PSD for each block
//                s     = c     - sum_k y_k a_k         >= 0 entrywise
//
// with its conjugate problem over moment matrices Z_blk >= 0, z >= 0:
//
//     minimize   sum <C_blk, Z_blk> + c^T z
//     subject to sum <A_{k,blk}, Z_blk> + a_k^T z = b_k.
//
// Constraint matrices are sparse; every A_{k,blk} must be Hermitian and is
// listed with both (i, j) and (j, i) entries.
// ---------------------------------------------------------------------------

struct SparseEntry {
  std::size_t i;
  std::size_t j;
  cplx value;
};
using SparseHermitian = std::vector<SparseEntry>;

struct PsdBlockData {
  DenseMatrix c;
  std::vector<SparseHermitian> a;  // one entry list per variable
};

struct LinearBlockData {
  RVector c;
  std::vector<std::vector<std::pair<std::size_t, double>>> a;  // per variable
};

struct ConicProblem {
  RVector b;
  std::vector<PsdBlockData> psd;
  std::optional<LinearBlockData> linear;
  std::optional<RVector> y_start;  // used when it makes every slack interior
};

struct ConicResult {
  RVector y;
  std::vector<DenseMatrix> slack;   // S_blk
  std::vector<DenseMatrix> moment;  // Z_blk
  RVector linear_slack;
  RVector linear_moment;
  double design_value = 0.0;  // b^T y
  double moment_value = 0.0;  // <C, Z> + c^T z
  double rel_gap = 0.0;
  double design_infeasibility = 0.0;
  double moment_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Raised when the interior-point iteration stops short of the requested
/// accuracy; the last iterate rides along for inspection.
class SdpNonConvergence : public Error {
 public:
  SdpNonConvergence(const std::string& what, ConicResult last)
      : Error(ErrorCode::non_convergence, what), last_(std::move(last)) {}
  const ConicResult& last_iterate() const noexcept { return last_; }

 private:
  ConicResult last_;
};

/// Primal-dual path-following interior point (HKM search direction with a
/// Mehrotra predictor-corrector). Throws SdpNonConvergence when the relative
/// gap is above tol.sdp_rel_gap after tol.sdp_max_iters Newton steps.
ConicResult solve_conic(const ConicProblem& problem, const Tolerances& tol = kDefaultTolerances);

// ---------------------------------------------------------------------------
// The three problem families behind the completely bounded norms.
// ---------------------------------------------------------------------------

/// primal_value is the minimization side (e.g. sum lambda), dual_value the
/// maximization side (e.g. Tr(PQ)); gap = |primal_value - dual_value|.
struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  RVector diag_left;         // lambda, or a for two-sided problems
  RVector diag_right;        // b for two-sided problems
  DenseMatrix primal_block;  // PSD block at the optimum (see each solver)
  DenseMatrix dual_matrix;   // PSD certificate from the conjugate problem
  DenseMatrix witness;       // matrix witness where one exists (Y for the T norm)
  int iterations = 0;
};

/// min sum(lambda) s.t. Delta(lambda) >= P; conjugate max Tr(PQ) over the
/// elliptope. dual_matrix is Q rescaled to an exact unit diagonal, and
/// dual_value = Tr(PQ) for that Q. P must be PSD.
SdpSolution solve_diag_dominance(const DenseMatrix& p, const Tolerances& tol = kDefaultTolerances);

enum class ScalingMode { cbb, schur };

/// mode cbb: min (sum a + sum b)/2 s.t. [[Delta(a), X], [X*, Delta(b)]] >= 0.
///   The optimum has sum a = sum b = ||X||_cbB. diag_left/right hold a, b;
///   dual_matrix is the moment matrix Z rescaled to diag(Z) = 1 (so its
///   off-diagonal block is -Y for the duality witness Y with ||Y||_S <= 1).
/// mode schur: min t s.t. [[W1, X], [X*, W2]] >= 0 with diag(W1), diag(W2) <= t.
///   primal_block holds the optimal [[W1, X], [X*, W2]].
/// Zero rows and columns of X are excluded from the program and get a_i = 0.
SdpSolution solve_two_sided_scaling(const DenseMatrix& x, ScalingMode mode,
                                    const Tolerances& tol = kDefaultTolerances);

/// max Re Tr(Y* X) over the cbF unit ball, represented as
/// [[I_m, Y], [Y*, Delta(lambda)]] >= 0, sum lambda <= 1. primal_value is the
/// attained Re Tr(Y*X), witness holds Y and diag_left holds lambda.
SdpSolution maximize_over_cbf_ball(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
