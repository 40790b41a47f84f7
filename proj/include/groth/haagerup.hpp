#pragma once

#include <cstdint>
#include <string>

#include "groth/config.hpp"
#include "groth/matrix.hpp"
#include "groth/status.hpp"
#include "groth/torus.hpp"

namespace groth {

/// The phase-vector construction behind ||X||_F <= ||X||_cbF <= sqrt(2) ||X||_F.
struct HaagerupData {
  TorusVector u;             // maximizer (best found) of u* X*X u
  RVector lambda;            // lambda_j = conj(u_j) (X*X u)_j, sums to ||X||_F^2
  RVector xi;                // sqrt(lambda_j) / ||X||_F
  DenseMatrix Z;             // X Delta(xi)^inv / ||X||_F, norm at most sqrt(2)
  NormBracket f_norm_bracket;
  double f_norm = 0.0;       // sqrt(sum lambda), the lower end of the bracket
  double u_gap = 0.0;        // relative gap of u*Pu to the relaxation bound
  bool u_certified = false;  // non-negative input or exhaustive phase grid
};

HaagerupData haagerup_construction(const DenseMatrix& x, const TorusBudget& budget = {},
                                   const Tolerances& tol = kDefaultTolerances);

struct HaagerupInequalityReport {
  CheckStatus status = CheckStatus::skipped;
  int samples = 0;
  int violations = 0;
  double max_slack_real = -INFINITY;     // max of lhs - rhs, real directions
  double max_slack_complex = -INFINITY;  // max of lhs - 2 rhs, complex directions
  double equality_defect = 0.0;          // |lhs - rhs| at a = ones
  std::string note;
};

/// Checks ||X Delta(u) a||^2 <= c ||X||_F^2 ||Delta(a) xi||^2 with c = 1 for
/// real a and c = 2 for complex a. Skipped unless data.u_certified.
HaagerupInequalityReport verify_haagerup_inequalities(const DenseMatrix& x, const HaagerupData& data,
                                                      int sample_count, std::uint64_t seed);

struct NonnegClosedForms {
  double f_norm = 0.0;  // equals the cbF norm for entrywise non-negative X
  double cbf_norm = 0.0;
  RVector lambda;       // lambda_j = sum_s sum_t x_sj x_st
};

NonnegClosedForms nonneg_closed_forms(const DenseMatrix& x);

/// Tr(P) <= ||P||_cbB <= sum_s ||row_s(X)||_1^2 <= (sum_j ||col_j(X)||_2)^2 for P = X*X.
struct CbbBoundChain {
  double trace = 0.0;
  double cbb_lower = 0.0;
  double cbb_upper = 0.0;
  double middle_sum = 0.0;
  double upper = 0.0;
  bool ordered = false;
  bool equality = false;  // non-negative X with cbB = middle_sum
};

CbbBoundChain cbb_bound_chain(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);

struct EigenDeterminantReport {
  CheckStatus status = CheckStatus::pass;
  double eigen_residual = 0.0;   // ||M gamma - ||X||_F^2 gamma||
  double f_squared = 0.0;
  double det_haagerup = 0.0;     // det(X*X - Delta(lambda))
  double scale_haagerup = 0.0;
  double det_cbb = 0.0;          // det(X*X - ||X*X||_cbB Delta(eta^2))
  double scale_cbb = 0.0;
  std::size_t support = 0;
  std::string note;
};

EigenDeterminantReport eigen_and_determinant_checks(const DenseMatrix& x, const HaagerupData& data,
                                                    const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
