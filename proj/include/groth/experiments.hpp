#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groth/config.hpp"
#include "groth/matrix.hpp"
#include "groth/report.hpp"
#include "groth/torus.hpp"

namespace groth {

/// P = [[Delta(eta)^2, X], [X*, Delta(xi)^2]] for X scaled to ||X||_cbB = 1,
/// and Q = [[L*L, L*R], [R*L, R*R]] from a Schur factorization of the cbB
/// duality witness Y = L*R (diagonal padded to 1).
struct BlockEmbedding {
  DenseMatrix X;  // normalized, support-trimmed source
  DenseMatrix P;
  DenseMatrix Q;
  RVector gamma;  // (eta, xi) / sqrt(2)
  RVector eta, xi;
  double scale = 0.0;  // ||X_in||_cbB
  std::vector<std::size_t> kept_rows, kept_cols;
  std::string warning;  // set when rows or columns were trimmed
};

BlockEmbedding block_embedding(const DenseMatrix& x, const Tolerances& tol = kDefaultTolerances);

struct BlockEmbeddingChecks {
  NormBracket p_cbb;
  double trace_qp = 0.0;
  double q_schur = 0.0;
  NormBracket p_b;
  NormBracket x_b;
  double containment_gap = 0.0;  // distance between [P_B] and 2 + 2[X_B]; 0 if they meet
  double displayed_slack = 0.0;  // (4/pi)(2 + 2 ||X||_B lower) - 4
  bool pass = false;
};

BlockEmbeddingChecks check_block_embedding(const BlockEmbedding& e, const TorusBudget& budget = {},
                                           const Tolerances& tol = kDefaultTolerances);

/// For PSD P: Q in the elliptope with Tr(QP) = ||P||_cbB and the rank-one
/// R = u u* from the best torus vector, Tr(RP) = ||P||_B lower.
struct PsdDuality {
  DenseMatrix Q;
  DenseMatrix R;
  double trace_qp = 0.0;
  double trace_rp = 0.0;
  NormBracket cbb;
  NormBracket b;
};

PsdDuality psd_duality(const DenseMatrix& p, const TorusBudget& budget = {},
                       const Tolerances& tol = kDefaultTolerances);

enum class ScanKind { positive, general, little };
enum class Ensemble { ginibre, gram, nonnegative, rank_one };

const char* to_string(ScanKind k);
const char* to_string(Ensemble e);
std::optional<ScanKind> parse_scan_kind(const std::string& s);
std::optional<Ensemble> parse_ensemble(const std::string& s);
/// gram for positive, ginibre otherwise.
Ensemble default_ensemble(ScanKind k);

inline constexpr int kHistogramBuckets = 64;
inline constexpr double kHistogramLo = 1.0, kHistogramHi = 1.8;

struct RatioScanReport {
  ScanKind kind = ScanKind::positive;
  Ensemble ensemble = Ensemble::gram;
  std::size_t rows = 0, cols = 0;
  int samples = 0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  int argmax = -1;  // sample index
  DenseMatrix argmax_matrix;
  int above_one = 0;  // samples with ratio > 1 + 1e-3
  double bound = 0.0;
  std::array<int, kHistogramBuckets> histogram{};
  int below = 0, above = 0;  // outside [1, 1.8)
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

/// Sample k uses Rng(derive_seed(seed, k)). Ratios: cbB/B on PSD inputs
/// (positive), cbB/B (general), cbF/F (little); each is upper/lower of the
/// bracket so the reported ratio never understates the true one.
RatioScanReport ratio_scan(ScanKind kind, std::size_t rows, std::size_t cols, int count, std::uint64_t seed,
                           Ensemble ensemble, const TorusBudget& budget = {},
                           const Tolerances& tol = kDefaultTolerances);

DenseMatrix scan_sample(ScanKind kind, Ensemble ensemble, std::size_t rows, std::size_t cols,
                        std::uint64_t sample_seed);

struct SuiteBudget {
  int samples = 50;        // per family
  int heavy_samples = 10;  // per family for the geometry-backed checks
  std::size_t max_dim = 5;
};

/// Every inequality of the library on seeded random families. One item per
/// named inequality; value and slack are the worst case over the family.
Report inequality_suite(std::uint64_t seed, const SuiteBudget& budget = {},
                        const Tolerances& tol = kDefaultTolerances);

}  // namespace groth
