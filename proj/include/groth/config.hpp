#pragma once

#include <cstdint>

namespace groth {

/// Numerical thresholds shared by every module. Defaults are the values the
/// library is validated against; callers may tighten or loosen them per call.
struct Tolerances {
  double hermitian_check = 1e-8;    // max |A - A*| entry before rejecting
  double jacobi_offdiag = 1e-13;    // relative off-diagonal HS mass at stop
  int jacobi_max_sweeps = 100;
  double psd_clamp = 1e-9;          // eigenvalues in [-psd_clamp, 0] -> 0
  double psd_reject = 1e-6;         // eigenvalue below -psd_reject -> error
  double rank_cut = 1e-10;          // relative singular/eigen cut-off
  double sdp_rel_gap = 1e-8;
  int sdp_max_iters = 500;
  double feasibility = 1e-3;        // Frank-Wolfe success threshold
  double bracket_slack = 1e-3;      // slack on asserted constant ratios
};

inline constexpr Tolerances kDefaultTolerances{};

/// Limits for the torus (unimodular) searches.
struct TorusBudget {
  int grid_limit = 4;        // max number of free phases searched on a grid
  int grid_points = 72;      // grid resolution per phase
  int starts = 32;           // multi-start count for the fixed-point iteration
  int max_iters = 10000;     // fixed-point iteration cap per start
  double gain_tol = 1e-12;   // stop when the objective gain drops below this
  std::uint64_t seed = 0x5eedULL;
  bool compute_upper = true; // run the SDP relaxation for the upper bound
};

}  // namespace groth
