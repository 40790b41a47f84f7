// groth: command-line front end. Reads a matrix, runs one computation and
// writes a JSON report (stdout unless --out is given).
//
// Exit codes: 0 success, 1 input/domain error or bad usage, 2 some item did
// not pass and --strict was given.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "groth/errors.hpp"
#include "groth/experiments.hpp"
#include "groth/factorizations.hpp"
#include "groth/geometry.hpp"
#include "groth/haagerup.hpp"
#include "groth/io.hpp"
#include "groth/linalg.hpp"
#include "groth/norms.hpp"
#include "groth/report.hpp"

using namespace groth;

namespace {

struct Options {
  std::string in, out, kind, format, size = "8";
  std::optional<double> alpha, tol;
  std::optional<int> budget;
  std::uint64_t seed = 42;
  bool strict = false, dry_run = false;
};

CheckStatus bracket_status(const NormBracket& b) {
  switch (b.status) {
    case BracketStatus::ok: return CheckStatus::pass;
    case BracketStatus::budget_exhausted: return CheckStatus::partial;
    case BracketStatus::bound_violated: return CheckStatus::fail;
  }
  return CheckStatus::fail;
}

bool exact_kind(NormKind k) {
  return k == NormKind::op || k == NormKind::hs || k == NormKind::cbF || k == NormKind::cbB ||
         k == NormKind::S || k == NormKind::T;
}

ReportItem& add_bracket(Report& r, const std::string& name, const NormBracket& b, bool midpoint) {
  ReportItem& it = r.add(name, midpoint ? 0.5 * (b.lower + b.upper) : b.lower, bracket_status(b));
  it.bracket = std::pair{b.lower, b.upper};
  it.slack = b.upper - b.lower;
  it.note = b.note;
  return it;
}

ReportItem& add_check(Report& r, const std::string& name, double value, double slack) {
  ReportItem& it = r.add(name, value, slack >= 0.0 ? CheckStatus::pass : CheckStatus::fail);
  it.slack = slack;
  return it;
}

RVector phases(const TorusVector& u) { return u.phases; }

Tolerances tolerances(const Options& o) {
  Tolerances t;
  if (o.tol) t.feasibility = *o.tol;
  return t;
}

NormBudget norm_budget(const Options& o) {
  NormBudget b;
  if (o.tol) b.gauge_tol = *o.tol;
  if (o.budget) b.gauge_max_rounds = *o.budget;
  return b;
}

GeoBudget geo_budget(const Options& o) {
  GeoBudget b;
  if (o.tol) b.feas_tol = *o.tol;
  if (o.budget) b.max_iters = *o.budget;
  return b;
}

DenseMatrix input(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::io, "--in is required");
  MatrixFormat f = format_from_path(o.in);
  if (o.format == "csv") f = MatrixFormat::csv;
  if (o.format == "json") f = MatrixFormat::json;
  return read_matrix(o.in, f);
}

void dry_run(Report& r, const DenseMatrix& x) {
  r.add("rows", static_cast<double>(x.rows()));
  r.add("cols", static_cast<double>(x.cols()));
}

// ---- subcommands ---------------------------------------------------------------

void cmd_norm(const Options& o, Report& r) {
  std::vector<NormKind> kinds(std::begin(kAllNormKinds), std::end(kAllNormKinds));
  if (!o.kind.empty()) {
    const auto k = parse_norm_kind(o.kind);
    if (!k) throw Error(ErrorCode::domain, "unknown norm kind '" + o.kind + "'");
    kinds = {*k};
  }
  const DenseMatrix x = input(o);
  if (o.dry_run) return dry_run(r, x);
  const NormBudget nb = norm_budget(o);
  const Tolerances tol = tolerances(o);
  for (NormKind k : kinds) add_bracket(r, to_string(k), norm(x, k, nb, tol), exact_kind(k));
}

void cmd_factorize(const Options& o, Report& r) {
  const std::string kind = o.kind.empty() ? "cbB" : o.kind;
  const std::vector<std::string> known{"cbB", "cbF", "S", "split", "witness_S", "witness_cbF"};
  if (std::find(known.begin(), known.end(), kind) == known.end())
    throw Error(ErrorCode::domain, "factorize --kind must be one of cbB, cbF, S, split, witness_S, witness_cbF");
  const DenseMatrix x = input(o);
  if (o.dry_run) return dry_run(r, x);
  const Tolerances tol = tolerances(o);
  if (kind == "cbB") {
    const CbBFactorization f = cbb_factorization(x, tol);
    r.add("cbB", f.value);
    r.add("residual", hs_norm(scale_rows_cols(f.B, f.eta, f.xi) - x) / hs_norm(x));
    r.vectors = {{"eta", f.eta}, {"xi", f.xi}};
    r.matrices = {{"B", f.B}};
  } else if (kind == "cbF") {
    const CbfVector f = cbf_vector(x, tol);
    r.add("cbF", f.value);
    r.vectors = {{"xi", f.xi}};
    r.matrices = {{"Z", f.Z}};
  } else if (kind == "S") {
    const SchurFactorization f = schur_factorization(x, tol);
    r.add("S", f.value);
    r.add("residual", hs_norm(f.L.adjoint() * f.R - x) / hs_norm(x));
    r.matrices = {{"L", f.L}, {"R", f.R}};
  } else if (kind == "split") {
    const FactSplit f = fact_split(x, tol);
    r.add("cbB", f.cbb.value);
    r.add("residual", hs_norm(f.D * f.C - x) / hs_norm(x));
    r.matrices = {{"C", f.C}, {"D", f.D}, {"W", f.W}, {"P", f.P}};
  } else {
    const DualityWitness w = duality_witness(x, kind == "witness_S" ? DualityPair::cbb_s : DualityPair::t_cbf, tol);
    r.add("value", w.value);
    add_check(r, "pairing", w.pairing, w.pairing - w.value * (1 - 1e-6));
    r.matrices = {{"Y", w.Y}};
  }
}

void cmd_haagerup(const Options& o, Report& r) {
  const DenseMatrix x = input(o);
  if (o.dry_run) return dry_run(r, x);
  const Tolerances tol = tolerances(o);
  TorusBudget tb;
  if (o.budget) tb.starts = *o.budget;
  const HaagerupData d = haagerup_construction(x, tb, tol);
  ReportItem& f = add_bracket(r, "f_norm", d.f_norm_bracket, false);
  if (!d.u_certified && f.status == CheckStatus::pass) f.status = CheckStatus::partial;
  r.add("u_gap", d.u_gap);
  add_check(r, "Z_op_le_sqrt2", op_norm(d.Z), std::sqrt(2.0) * (1 + d.u_gap) + 1e-9 - op_norm(d.Z));
  const HaagerupInequalityReport h = verify_haagerup_inequalities(x, d, 200, o.seed);
  ReportItem& hi = r.add("inequalities", static_cast<double>(h.violations), h.status);
  hi.slack = -std::max(h.max_slack_real, h.max_slack_complex);
  hi.note = h.note;
  const EigenDeterminantReport e = eigen_and_determinant_checks(x, d, tol);
  ReportItem& ei = r.add("eigen_residual", e.eigen_residual, e.status);
  ei.slack = 1e-6 * e.f_squared - e.eigen_residual;
  ei.note = e.note;
  r.add("det_haagerup", e.det_haagerup, e.status).slack = 1e-6 * e.scale_haagerup - std::abs(e.det_haagerup);
  r.add("det_cbB", e.det_cbb, e.status).slack = 1e-6 * e.scale_cbb - std::abs(e.det_cbb);
  r.vectors = {{"xi", d.xi}, {"lambda", d.lambda}, {"u_phases", phases(d.u)}};
  r.matrices = {{"Z", d.Z}};
}

void cmd_decompose(const Options& o, Report& r) {
  const std::string kind = o.kind.empty() ? "geo" : o.kind;
  if (kind != "geo" && kind != "geo2" && kind != "V" && kind != "alpha")
    throw Error(ErrorCode::domain, "decompose --kind must be one of geo, geo2, V, alpha");
  const DenseMatrix x = input(o);
  const double alpha = o.alpha.value_or(kind == "geo" || kind == "alpha" ? 1.35 : 4.0 / std::numbers::pi);
  if (o.dry_run) {
    if (kind != "V") require_elliptope(x);
    return dry_run(r, x);
  }
  const GeoBudget gb = geo_budget(o);
  const Tolerances tol = tolerances(o);
  if (kind == "geo") {
    const GeoDecomposition d = decompose_geo(x, alpha, gb, tol);
    ReportItem& it = r.add("min_eig", d.min_eig_achieved, d.success ? CheckStatus::pass : CheckStatus::fail);
    it.slack = d.min_eig_achieved + gb.feas_tol;
    r.add("iterations", d.iterations);
    r.add("atoms", static_cast<double>(d.R.atoms.size()));
    r.matrices = {{"R", d.R.implied()}, {"P", d.P}};
  } else if (kind == "geo2") {
    const int depth = 40;
    const Geo2Result g = decompose_geo2(x, alpha, depth, gb, tol);
    add_check(r, "residual", g.residual, gb.feas_tol - g.residual).status =
        g.success ? CheckStatus::pass : CheckStatus::fail;
    r.add("depth_reached", g.depth_reached);
    r.matrices = {{"R_plus", g.R_plus.implied()}, {"R_minus", g.R_minus.implied()}};
  } else if (kind == "V") {
    const VMembership v = v_membership(x, alpha, gb, tol);
    const double bound = alpha / (2 - alpha);
    add_check(r, "rho", v.rho, bound + 1e-2 - v.rho);
    r.add("rho_geometric", v.rho_geometric);
    add_check(r, "residual", v.residual, gb.feas_tol - v.residual);
    r.add("atoms", static_cast<double>(v.mixture.atoms.size()));
  } else {
    const AlphaFeasibility f = alpha_feasibility(x, alpha, false, gb, tol);
    ReportItem& it = r.add("min_eig", f.min_eig_achieved, f.feasible ? CheckStatus::pass : CheckStatus::fail);
    it.slack = f.min_eig_achieved + gb.feas_tol;
    r.add("iterations", f.iterations);
  }
}

void cmd_embed(const Options& o, Report& r) {
  const DenseMatrix x = input(o);
  if (o.dry_run) return dry_run(r, x);
  const Tolerances tol = tolerances(o);
  const BlockEmbedding e = block_embedding(x, tol);
  const BlockEmbeddingChecks c = check_block_embedding(e, {}, tol);
  r.add("cbB_X", e.scale).note = e.warning;
  ReportItem& p = add_bracket(r, "cbB_P", c.p_cbb, true);
  p.slack = 4e-5 - std::max(std::abs(c.p_cbb.lower - 4), std::abs(c.p_cbb.upper - 4));
  p.status = *p.slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
  add_check(r, "trace_QP", c.trace_qp, 4e-5 - std::abs(c.trace_qp - 4));
  add_check(r, "S_Q", c.q_schur, 1e-6 - std::abs(c.q_schur - 1));
  ReportItem& pb = add_bracket(r, "B_P", c.p_b, false);
  pb.slack = 4e-6 - c.containment_gap;
  pb.status = *pb.slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
  add_bracket(r, "B_X", c.x_b, false);
  add_check(r, "k_times_2_plus_2B_X_minus_4", c.displayed_slack, c.displayed_slack + 4e-6);
  r.vectors = {{"gamma", e.gamma}};
  r.matrices = {{"P", e.P}, {"Q", e.Q}};
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& s) {
  try {
    const auto comma = s.find(',');
    std::size_t used = 0;
    const auto m = std::stoul(s.substr(0, comma), &used);
    const auto n = comma == std::string::npos ? m : std::stoul(s.substr(comma + 1));
    if (m == 0 || n == 0 || m > 64 || n > 64) throw std::out_of_range("size");
    return {m, n};
  } catch (const std::exception&) {
    throw Error(ErrorCode::domain, "--size must be N or M,N with 1 <= M, N <= 64");
  }
}

void cmd_scan(const Options& o, Report& r, const std::string& ensemble) {
  const auto kind = parse_scan_kind(o.kind.empty() ? "positive" : o.kind);
  if (!kind) throw Error(ErrorCode::domain, "scan --kind must be one of positive, general, little");
  const auto ens = ensemble.empty() ? default_ensemble(*kind) : parse_ensemble(ensemble);
  if (!ens) throw Error(ErrorCode::domain, "unknown ensemble '" + ensemble + "'");
  const auto [m, n] = parse_size(o.size);
  const int count = o.budget.value_or(100);
  if (count < 1) throw Error(ErrorCode::domain, "--budget must be at least 1");
  if (o.dry_run) return;
  const RatioScanReport s = ratio_scan(*kind, m, n, count, o.seed, *ens, {}, tolerances(o));
  ReportItem& it = r.add("max_ratio", s.max_ratio, s.status);
  it.slack = s.bound - s.max_ratio;
  it.note = s.note;
  r.add("min_ratio", s.min_ratio);
  r.add("argmax_sample", s.argmax);
  r.add("samples_above_1_plus_1e-3", s.above_one);
  r.add("below_histogram", s.below);
  r.add("above_histogram", s.above);
  RVector h(s.histogram.begin(), s.histogram.end());
  r.vectors = {{"histogram", h}};
  r.matrices = {{"argmax", s.argmax_matrix}};
}

void cmd_verify(const Options& o, Report& r) {
  SuiteBudget b;
  if (o.budget) {
    if (*o.budget < 0) throw Error(ErrorCode::domain, "--budget must be non-negative");
    b.samples = *o.budget;
    b.heavy_samples = std::min(b.heavy_samples, *o.budget);
  }
  if (o.dry_run) return;
  const Report s = inequality_suite(o.seed, b, tolerances(o));
  r.items = s.items;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grothendieck-type norms, factorizations and certificates for complex matrices"};
  app.require_subcommand(1, 1);
  Options o;
  std::string ensemble;

  auto common = [&](CLI::App* c, bool needs_input) {
    if (needs_input) {
      c->add_option("--in", o.in, "input matrix (JSON or CSV)")->required();
      c->add_option("--format", o.format, "input format; default from extension")->check(CLI::IsMember({"json", "csv"}));
    }
    c->add_option("--out", o.out, "report path (default: stdout)");
    c->add_option("--seed", o.seed, "master seed");
    c->add_option("--tol", o.tol, "solver stopping tolerance");
    c->add_option("--budget", o.budget, "iteration or sample budget");
    c->add_flag("--strict", o.strict, "exit 2 unless every item passes");
    c->add_flag("--dry-run", o.dry_run, "validate inputs only");
  };

  auto* norm_cmd = app.add_subcommand("norm", "norm brackets");
  common(norm_cmd, true);
  norm_cmd->add_option("--kind", o.kind, "op, hs, F, cbF, B, cbB, S, T, proj_inf_inf, proj_2_inf (default: all)");
  auto* fact_cmd = app.add_subcommand("factorize", "optimal factorizations and duality witnesses");
  common(fact_cmd, true);
  fact_cmd->add_option("--kind", o.kind, "cbB, cbF, S, split, witness_S, witness_cbF");
  auto* haag_cmd = app.add_subcommand("haagerup", "Haagerup scaling vector and its checks");
  common(haag_cmd, true);
  auto* dec_cmd = app.add_subcommand("decompose", "elliptope decompositions");
  common(dec_cmd, true);
  dec_cmd->add_option("--kind", o.kind, "geo, geo2, V, alpha");
  dec_cmd->add_option("--alpha", o.alpha, "alpha (default 1.35 for geo/alpha, 4/pi otherwise)");
  auto* embed_cmd = app.add_subcommand("embed", "block embedding of X into a PSD matrix");
  common(embed_cmd, true);
  auto* scan_cmd = app.add_subcommand("scan", "constant-ratio scans (budget = sample count)");
  common(scan_cmd, false);
  scan_cmd->add_option("--kind", o.kind, "positive, general, little");
  scan_cmd->add_option("--size", o.size, "N or M,N");
  scan_cmd->add_option("--ensemble", ensemble, "ginibre, gram, nonnegative, rank_one");
  auto* verify_cmd = app.add_subcommand("verify", "inequality suite (budget = samples per family)");
  common(verify_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Report r;
  r.seed = o.seed;
  for (int i = 1; i < argc; ++i) r.command += (i > 1 ? " " : "") + std::string(argv[i]);
  const std::string sub = app.get_subcommands().front()->get_name();
  int code = 0;
  try {
    if (sub == "norm") cmd_norm(o, r);
    else if (sub == "factorize") cmd_factorize(o, r);
    else if (sub == "haagerup") cmd_haagerup(o, r);
    else if (sub == "decompose") cmd_decompose(o, r);
    else if (sub == "embed") cmd_embed(o, r);
    else if (sub == "scan") cmd_scan(o, r, ensemble);
    else cmd_verify(o, r);
  } catch (const Error& e) {
    std::cerr << "groth " << sub << ": " << e.what() << "\n";
    r.items.clear();
    r.error_code = to_string(e.code());
    r.error = e.what();
    code = 1;
  }
  if (code == 0 && o.strict)
    for (const auto& it : r.items)
      if (it.status == CheckStatus::fail || it.status == CheckStatus::partial) code = 2;

  try {
    if (o.out.empty())
      std::cout << serialize(r);
    else
      write_report(r, o.out);
  } catch (const Error& e) {
    std::cerr << "groth: " << e.what() << "\n";
    return 1;
  }
  return code;
}
