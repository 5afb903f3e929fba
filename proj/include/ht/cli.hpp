#pragma once
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ht/blocks.hpp"
#include "ht/branches.hpp"
#include "ht/c0.hpp"
#include "ht/minpoly.hpp"

namespace ht {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string model = "irr(8)";
  uint64_t seed = 12345;
  int samples = 10;
  bool exact = false;
  std::string format = "json";  // json | csv | text
  double tol_rank = 1e-4;
  double tol_cluster = 1e-9;
  double fd_step = 1e-5;
  std::string out;  // empty = stdout
};

struct CommandResult {
  int exit_code = 0;
  Json body;
};

// exit codes: 0 ok, 1 verification failure, 2 parse error, 3 ambiguity,
// 4 degenerate direction, 5 no termination
enum ExitCode {
  kOk = 0,
  kVerifyFailed = 1,
  kParseError = 2,
  kAmbiguity = 3,
  kDegenerate = 4,
  kNoTermination = 5,
};

// fixed-format doubles serialized as strings, so output is byte-identical
// across runs and platforms regardless of the json library's float printing
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json json_header(const char* command, const RunConfig& cfg) {
  Json j;
  j["schema"] = "htype/1";
  j["command"] = command;
  j["model"] = cfg.model;
  j["seed"] = cfg.seed;
  return j;
}

// ---- spectrum ------------------------------------------------------------

inline CommandResult cmd_spectrum(const RunConfig& cfg) {
  HType A{build_module(cfg.model)};
  Classification c = classify(A, cfg.samples, cfg.seed, cfg.tol_cluster);
  Vec X = sample_admissible(A, cfg.seed, 500, 1e-2, cfg.tol_cluster);
  X /= X.norm();
  SpectrumReport rep = spectrum(A, X, cfg.tol_cluster);

  Json j = json_header("spectrum", cfg);
  j["n"] = A.n;
  j["d"] = A.d;
  j["m0"] = c.m0;
  j["has_unit"] = c.has_unit;
  Json branches = Json::array();
  for (auto& [val, mult] : rep.nonconstant)
    branches.push_back({{"value", fmt_double(val)}, {"multiplicity", mult}});
  j["branches"] = branches;
  j["samples_used"] = cfg.samples;
  return {kOk, j};
}

// ---- minpoly -------------------------------------------------------------

inline CommandResult cmd_minpoly(const RunConfig& cfg,
                                 const std::optional<Vec>& X_opt = std::nullopt) {
  HType A{build_module(cfg.model)};
  Vec X;
  if (X_opt) {
    X = *X_opt;
  } else {
    X = sample_admissible(A, cfg.seed, 500, 1e-2, cfg.tol_cluster);
    X /= X.norm();
  }
  BlueprintResult res = blueprint_minpoly(A, X, cfg.tol_rank);
  Poly<double> pred = predicted_minpoly(A, X, cfg.tol_cluster);
  double scale = 0, worst = 0;
  for (double cc : pred) scale = std::max(scale, std::abs(cc));
  for (size_t i = 0; i < pred.size() && i < res.coeffs.size(); ++i)
    worst = std::max(worst, std::abs(pred[i] - res.coeffs[i]));

  Json j = json_header("minpoly", cfg);
  j["degree"] = res.degree;
  Json coeffs = Json::array();
  for (double cc : res.coeffs) coeffs.push_back(fmt_double(cc));
  j["coefficients"] = coeffs;
  if (cfg.exact) {
    Json ex = Json::array();
    for (double cc : res.coeffs) {
      auto r = rational_reconstruct(cc);
      ex.push_back(r ? Json(rat_to_string(*r)) : Json(nullptr));
    }
    j["coefficients_exact"] = ex;
  }
  j["residual"] = fmt_double(res.residual);
  j["predicted_degree"] = (int)pred.size() - 1;
  j["max_coeff_reldiff"] = fmt_double(scale > 0 ? worst / scale : 0.0);
  return {kOk, j};
}

// ---- verify --------------------------------------------------------------

struct CheckRow {
  std::string name;
  bool passed;
  double residual;
};

namespace detail {

inline std::optional<BranchTag> branch_tag_for(const std::string& spec) {
  static const std::map<std::string, BranchTag> table = {
      {"sum(irr(3,+),irr(3,-))", BranchTag::n3_mixed},
      {"irr(4)", BranchTag::n4_irr},
      {"irr(5)", BranchTag::n5_irr},
      {"sum(irr(7,+),irr(7,+))", BranchTag::n7_iso},
      {"sum(irr(7,+),irr(7,-))", BranchTag::n7_mixed},
      {"irr(8)", BranchTag::n8_irr},
      {"irr(9)", BranchTag::n9_irr}};
  auto it = table.find(spec);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

inline CheckRow verify_clifford(const HType& A, const RunConfig& cfg) {
  A.M.validate();  // exact integer relations; throws on violation
  double worst = 0;
  Mat I = Mat::Identity(A.d, A.d);
  for (int i = 0; i < A.n; ++i) {
    worst = std::max(worst, (A.M.Gd[i] + A.M.Gd[i].transpose()).norm());
    worst = std::max(worst, (A.M.Gd[i] * A.M.Gd[i] + I).norm() / A.d);
    for (int jj = i + 1; jj < A.n; ++jj)
      worst = std::max(
          worst, (A.M.Gd[i] * A.M.Gd[jj] + A.M.Gd[jj] * A.M.Gd[i]).norm() / A.d);
  }
  // <Z, S1*S2> = <Z.S1, S2> on random data
  SplitMix64 rng(cfg.seed);
  for (int t = 0; t < cfg.samples; ++t) {
    Vec Z(A.n), S1(A.d), S2(A.d);
    for (int i = 0; i < A.n; ++i) Z[i] = rng.gaussian();
    for (int i = 0; i < A.d; ++i) S1[i] = rng.gaussian();
    for (int i = 0; i < A.d; ++i) S2[i] = rng.gaussian();
    Z.normalize(); S1.normalize(); S2.normalize();
    worst = std::max(worst,
                     std::abs(Z.dot(A.M.star(S1, S2)) - A.M.act(Z, S1).dot(S2)));
  }
  return {"clifford", worst < 1e-12, worst};
}

inline CheckRow verify_curvature(const HType& A, const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed ^ 0x1);
  double worst = 0;
  for (int t = 0; t < cfg.samples; ++t) {
    Vec X = random_tangent(A, rng.next()), Y = random_tangent(A, rng.next());
    X.normalize(); Y.normalize();
    Mat R = A.curvature(X);
    worst = std::max(worst, (R - R.transpose()).norm() / A.m);
    worst = std::max(worst, (R * X).norm());
    worst = std::max(worst,
                     std::abs(Y.dot(R * Y) - A.curvature_general_oracle(X, Y)));
    worst = std::max(worst, std::abs(R.trace() - A.ricci(X, X)) / A.m);
  }
  return {"curvature", worst < 1e-12, worst};
}

inline CheckRow verify_c0(const HType& A, const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed ^ 0x2);
  double worst = 0;
  int done = 0;
  for (int t = 0; t < cfg.samples * 10 && done < cfg.samples; ++t) {
    Vec X = random_tangent(A, rng.next());
    X.normalize();
    if (A.zpart(X).norm() < 0.1 || A.vpart(X).norm() < 0.1) continue;
    ++done;
    SubspaceDecomposition D = decompose(A, X);
    Mat C = c0_operator(A, X, D), T = theta_operator(A, X, D);
    Mat R = A.curvature(X);
    worst = std::max(worst, (T + C - A.levi_civita_matrix(X)).norm() / A.m);
    Vec Xprime = A.join(Vec::Zero(A.n), -A.M.act(A.zpart(X), A.vpart(X)));
    worst = std::max(worst, (T * X - Xprime).norm());
    Mat comm = T * R - R * T;
    worst = std::max(worst, (comm - 2 * A.curvature_polarized(X, Xprime)).norm() / A.m);
    worst = std::max(worst, (C + C.transpose()).norm() / A.m);
    worst = std::max(worst, (C * X).norm());
  }
  return {"c0", worst < 1e-12, worst};
}

inline CheckRow verify_spectrum(const HType& A, const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed ^ 0x3);
  double worst = 0;
  int done = 0;
  for (int t = 0; t < cfg.samples * 10 && done < cfg.samples; ++t) {
    Vec X = random_tangent(A, rng.next());
    X.normalize();
    if (A.zpart(X).norm() < 0.1 || A.vpart(X).norm() < 0.1) continue;
    ++done;
    Mat K = k_hat(A, X);
    worst = std::max(worst, (K + K.transpose()).norm() / std::max(1.0, K.norm()));
    Vec e = minus_kcheck_sq_eigs(A, X);
    worst = std::max(worst, std::max(-e.minCoeff(), e.maxCoeff() - 1.0));
  }
  Classification c = classify(A, cfg.samples, cfg.seed, cfg.tol_cluster);
  bool parity = (c.m0 % 2) == (A.n % 2);
  return {"spectrum", parity && worst < 1e-10, worst};
}

inline CheckRow verify_branches(const HType& A, const RunConfig& cfg) {
  auto tag = branch_tag_for(A.M.spec);
  if (!tag) throw ParseError("verify branches: no closed-form branches for " + A.M.spec);
  BranchModel M = BranchModel::make(*tag);
  SplitMix64 rng(cfg.seed ^ 0x4);
  double worst = 0;
  int done = 0;
  for (int t = 0; t < cfg.samples * 30 && done < cfg.samples; ++t) {
    Vec X = random_tangent(M.A, rng.next());
    X.normalize();
    if (M.A.zpart(X).norm() < 0.1 || M.A.vpart(X).norm() < 0.1) continue;
    auto want = M.explicit_branch_values(X);
    double scale = want.back().first;
    bool sep = true;
    for (size_t i = 0; i < want.size(); ++i) {
      if (want[i].first < 1e-3 * scale) sep = false;
      if (i && want[i].first - want[i - 1].first < 1e-3 * scale) sep = false;
    }
    if (!sep) continue;
    auto got = M.eigensolver_branch_values(X);
    if (got.size() != want.size()) return {"branches", false, 1.0};
    for (size_t i = 0; i < want.size(); ++i) {
      if (got[i].second != want[i].second) return {"branches", false, 1.0};
      worst = std::max(worst, std::abs(got[i].first - want[i].first) / scale);
    }
    ++done;
  }
  return {"branches", done > 0 && worst < 1e-9, worst};
}

inline CheckRow verify_killing(const HType& A, const RunConfig& cfg) {
  auto tag = branch_tag_for(A.M.spec);
  if (!tag) throw ParseError("verify killing: no closed-form branches for " + A.M.spec);
  BranchModel M = BranchModel::make(*tag);
  SplitMix64 rng(cfg.seed ^ 0x5);
  double worst = 0;
  int done = 0;
  for (int t = 0; t < cfg.samples * 10 && done < cfg.samples; ++t) {
    Vec X = random_tangent(M.A, rng.next());
    X.normalize();
    if (M.A.zpart(X).norm() < 0.1) continue;
    worst = std::max(worst, M.killing_deviation(X));
    ++done;
  }
  return {"killing", done > 0 && worst < 1e-9, worst};
}

inline CheckRow verify_blocks(const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed ^ 0x6);
  auto rnd = [&](int lo) {
    return Rat((int64_t)(rng.next() % 9) + lo, (int64_t)(rng.next() % 4) + 1);
  };
  Poly<Rat> lam{Rat(0), Rat(1)};
  int done = 0;
  for (int t = 0; t < cfg.samples * 10 && done < cfg.samples; ++t) {
    Rat mu = Rat((int64_t)(rng.next() % 29) + 1, 31);
    Rat z = rnd(1), v = rnd(1);
    Rat z2 = z * z, v2 = v * v;
    try {
      if (block_annihilator_exact(FactorKind::mu, mu, z, v) !=
          poly_mul(lam, factor_mu(mu, z2, v2)))
        return {"blocks", false, 1.0};
      if (block_annihilator_exact(FactorKind::zero_sharp, mu, z, v) !=
          poly_mul(lam, factor_zero_sharp(z2, v2)))
        return {"blocks", false, 1.0};
      if (block_annihilator_exact(FactorKind::one_sharp, mu, z, v) !=
          poly_mul(lam, factor_one_sharp(z2, v2)))
        return {"blocks", false, 1.0};
      if (block_annihilator_exact(FactorKind::n3, mu, z, v) != factor_n3(z2, v2))
        return {"blocks", false, 1.0};
    } catch (const NonGenericParameters&) {
      continue;  // parameters on a degeneration locus; resample
    }
    ++done;
  }
  return {"blocks", done == cfg.samples, 0.0};
}

inline CheckRow verify_positivity(const HType& A, const RunConfig& cfg) {
  for (int t = 0; t < cfg.samples; ++t) {
    Vec X = sample_admissible(A, split_seed(cfg.seed ^ 0x7, t), 500, 1e-2,
                              cfg.tol_cluster);
    if (!positivity_check(predicted_minpoly(A, X, cfg.tol_cluster)))
      return {"positivity", false, 1.0};
  }
  return {"positivity", true, 0.0};
}

inline CheckRow verify_expansion(const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed ^ 0x8);
  double worst = 0;
  for (int ell = 1; ell <= 4; ++ell) {
    double Aq = 2 + rng.uniform(), Bq = 2 + rng.uniform(), Cq = 2 + rng.uniform();
    std::vector<double> mus;
    for (int i = 0; i < ell; ++i) mus.push_back(1 + rng.uniform());
    std::vector<double> sig(ell + 1, 0.0);
    sig[0] = 1;
    for (double mh : mus)
      for (int j = ell; j >= 1; --j) sig[j] += sig[j - 1] * mh;
    std::vector<double> D = symmetric_expansion(sig, Aq, Bq, Cq);
    Poly<double> Q{Cq, 0, Bq, 0, Aq, 0, 1};
    Poly<double> prod{1.0};
    for (double mh : mus) {
      Poly<double> f = Q;
      f[0] -= 243.0 / 64.0 * mh;
      prod = poly_mul(prod, f);
    }
    double scale = 0;
    for (double cc : prod) scale = std::max(scale, std::abs(cc));
    for (int i = 0; i <= 3 * ell; ++i)
      worst = std::max(worst, std::abs(prod[2 * i] - D[i]) / scale);
  }
  return {"expansion", worst < 1e-10, worst};
}

}  // namespace detail

inline CommandResult cmd_verify(const RunConfig& cfg, const std::string& suite) {
  HType A{build_module(cfg.model)};
  std::vector<CheckRow> rows;
  bool has_branches = detail::branch_tag_for(A.M.spec).has_value();
  auto want = [&](const char* s) { return suite == s || suite == "all"; };
  if (want("clifford")) rows.push_back(detail::verify_clifford(A, cfg));
  if (want("curvature")) rows.push_back(detail::verify_curvature(A, cfg));
  if (want("c0")) rows.push_back(detail::verify_c0(A, cfg));
  if (want("spectrum")) rows.push_back(detail::verify_spectrum(A, cfg));
  if (suite == "branches" || (suite == "all" && has_branches))
    rows.push_back(detail::verify_branches(A, cfg));
  if (suite == "killing" || (suite == "all" && has_branches))
    rows.push_back(detail::verify_killing(A, cfg));
  if (want("blocks")) rows.push_back(detail::verify_blocks(cfg));
  if (want("positivity")) rows.push_back(detail::verify_positivity(A, cfg));
  if (want("expansion")) rows.push_back(detail::verify_expansion(cfg));
  if (rows.empty()) throw ParseError("verify: unknown suite '" + suite + "'");

  Json j = json_header("verify", cfg);
  j["suite"] = suite;
  bool all_pass = true;
  Json checks = Json::array();
  for (auto& r : rows) {
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"max_residual", fmt_double(r.residual)}});
    all_pass = all_pass && r.passed;
  }
  j["checks"] = checks;
  j["passed"] = all_pass;
  return {all_pass ? kOk : kVerifyFailed, j};
}

// ---- table ---------------------------------------------------------------

struct TableRow {
  std::string label, spec;
  int ell;
  bool m0_ge_2, has_unit;
  std::string word;
  int degree;
};

inline const std::vector<TableRow>& expected_table() {
  static const std::vector<TableRow> t = {
      {"n=1", "irr(1)", 0, false, false, "P_n3", 3},
      {"n=2", "irr(2)", 0, true, false, "P_n3 P_0#", 7},
      {"n=3", "irr(3,+)", 0, false, true, "P_n3 P_1#", 5},
      {"n=4", "irr(4)", 1, true, false, "P_n3 P_0# P_mu", 13},
      {"n=5", "irr(5)", 1, false, true, "P_n3 P_1# P_mu", 11},
      {"n=6", "irr(6)", 0, true, true, "P_n3 P_0# P_1#", 9},
      {"n=7", "irr(7,+)", 0, false, true, "P_n3 P_1#", 5},
      {"n=8", "irr(8)", 1, true, false, "P_n3 P_0# P_mu", 13},
      {"n=9", "irr(9)", 3, false, false, "P_n3 P_mu1 P_mu2 P_mu3", 21},
      {"n=3 isotypic", "sum(irr(3,+),irr(3,+))", 0, false, true, "P_n3 P_1#", 5},
      {"n=7 isotypic", "sum(irr(7,+),irr(7,+))", 1, false, true,
       "P_n3 P_1# P_mu", 11},
      {"n=7 mixed", "sum(irr(7,+),irr(7,-))", 2, false, false,
       "P_n3 P_mu1 P_mu2", 15},
      {"n=8 reducible", "sum(irr(8),irr(8))", 3, true, false,
       "P_n3 P_0# P_mu1 P_mu2 P_mu3", 25},
      {"n=9 reducible", "sum(irr(9),irr(9))", 4, false, false,
       "P_n3 P_mu1 P_mu2 P_mu3 P_mu4", 27},
  };
  return t;
}

inline std::string factor_word(int ell, bool m0_ge_2, bool has_unit) {
  std::string w = "P_n3";
  if (m0_ge_2) w += " P_0#";
  if (has_unit) w += " P_1#";
  if (ell == 1) w += " P_mu";
  for (int i = 1; ell > 1 && i <= ell; ++i) w += " P_mu" + std::to_string(i);
  return w;
}

inline CommandResult cmd_table(const RunConfig& cfg) {
  Json j = json_header("table", cfg);
  Json rows = Json::array();
  bool all_match = true;
  for (const TableRow& exp : expected_table()) {
    HType A{build_module(exp.spec)};
    Classification c = classify(A, std::max(cfg.samples, 5), cfg.seed, cfg.tol_cluster);
    Vec X = sample_admissible(A, cfg.seed, 500, 1e-2, cfg.tol_cluster);
    X /= X.norm();
    BlueprintResult res = blueprint_minpoly(A, X, cfg.tol_rank);
    std::string word = factor_word(c.ell, c.m0 >= 2, c.has_unit);
    bool match = c.ell == exp.ell && (c.m0 >= 2) == exp.m0_ge_2 &&
                 c.has_unit == exp.has_unit && word == exp.word &&
                 res.degree == exp.degree;
    all_match = all_match && match;
    rows.push_back({{"label", exp.label},
                    {"model", exp.spec},
                    {"ell", c.ell},
                    {"m0_ge_2", c.m0 >= 2},
                    {"has_unit", c.has_unit},
                    {"factors", word},
                    {"degree", res.degree},
                    {"expected_degree", exp.degree},
                    {"match", match}});
  }
  j["rows"] = rows;
  j["all_match"] = all_match;
  return {all_match ? kOk : kVerifyFailed, j};
}

// ---- output rendering ----------------------------------------------------

namespace detail {

inline void flatten(const Json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

}  // namespace detail

inline std::string render(const Json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> kv;
  detail::flatten(j, "", kv);
  std::string out;
  for (auto& [k, v] : kv)
    out += format == "csv" ? (k + "," + v + "\n") : (k + " = " + v + "\n");
  return out;
}

inline int emit(const CommandResult& res, const RunConfig& cfg) {
  std::string text = render(res.body, cfg.format);
  if (cfg.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
  }
  return res.exit_code;
}

}  // namespace ht
