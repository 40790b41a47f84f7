#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groth/config.hpp"
#include "groth/matrix.hpp"
#include "groth/torus.hpp"

namespace groth {

enum class NormKind { op, hs, F, cbF, B, cbB, S, T, proj_inf_inf, proj_2_inf };

inline constexpr NormKind kAllNormKinds[] = {
    NormKind::op, NormKind::hs, NormKind::F,  NormKind::cbF,          NormKind::B,
    NormKind::cbB, NormKind::S, NormKind::T, NormKind::proj_inf_inf, NormKind::proj_2_inf};

const char* to_string(NormKind k);
/// Accepts the canonical names plus the aliases H, h (for S) and gamma2, H'
/// (for cbB). Case-sensitive.
std::optional<NormKind> parse_norm_kind(std::string_view name);

struct NormBudget {
  TorusBudget torus;
  double gauge_tol = 1e-3;   // stop when no atom beats the dual by more than this
  int gauge_atom_factor = 64;  // pool cap = factor * (m + n) atoms
  int gauge_max_rounds = 200;
};

/// Rank-one unimodular atoms of the set V with complex weights.
struct AtomMixtureV {
  struct Atom {
    TorusVector s;
    TorusVector t;
    cplx coefficient;
  };
  std::size_t rows = 0, cols = 0;
  std::vector<Atom> atoms;

  DenseMatrix implied() const;
  double gauge() const;  // sum |c_k|
};

/// Atoms mu nu^T with ||mu||_2 = 1 and nu unimodular, non-negative weights.
struct AtomMixture2Inf {
  struct Atom {
    CVector mu;
    TorusVector nu;
    double weight;
  };
  std::size_t rows = 0, cols = 0;
  std::vector<Atom> atoms;

  DenseMatrix implied() const;
  double gauge() const;
};

struct GaugeResult {
  NormBracket bracket;
  int rounds = 0;
  std::size_t pool_size = 0;
};

struct GaugeVResult : GaugeResult {
  AtomMixtureV mixture;
};

struct Gauge2InfResult : GaugeResult {
  AtomMixture2Inf mixture;
};

NormBracket norm(const DenseMatrix& x, NormKind kind, const NormBudget& budget = {},
                 const Tolerances& tol = kDefaultTolerances);

/// Gauge of V by column generation. Extra atoms may seed the pool.
GaugeVResult gauge_inf_inf(const DenseMatrix& x, const NormBudget& budget = {},
                           const Tolerances& tol = kDefaultTolerances,
                           const std::vector<AtomMixtureV::Atom>& seed_atoms = {});
Gauge2InfResult gauge_2_inf(const DenseMatrix& x, const NormBudget& budget = {},
                            const Tolerances& tol = kDefaultTolerances);

struct RankOneTable {
  double op, hs, F, cbF, B, cbB, S, T, proj_inf_inf, proj_2_inf;
  double get(NormKind k) const;
};

RankOneTable rank_one_closed_forms(std::span<const cplx> mu, std::span<const cplx> nu);

}  // namespace groth
