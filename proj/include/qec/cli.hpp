// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEC_CLI_HPP
#define QEC_CLI_HPP

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qec/cone.hpp"
#include "qec/constructions.hpp"
#include "qec/entropy.hpp"
#include "qec/io.hpp"
#include "qec/lemma_lab.hpp"
#include "qec/qstate.hpp"
#include "qec/tip_probe.hpp"

namespace qec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// Margins below this count as failed checks in verification commands.
inline constexpr double kMarginFloor = -1e-8;

/// Shared flags. Unset fields keep the module defaults.
struct RunConfig {
  double membership_tol = kMembershipTolerance;
  double saturation_tol = kSaturationTolerance;
  double product_tol = kProductTolerance;
  std::size_t cap = kDefaultDimensionCap;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool paper_order = false;

  void validate() const {
    if (!(membership_tol > 0) || !(saturation_tol > 0) || !(product_tol > 0))
      throw InputError("tolerances must be positive");
    if (format != "csv" && format != "json") throw InputError("format must be csv or json");
  }
};

// JSON views of the library reports.

inline Json vector_json(const EntropyVector& v, bool paper_order = false) {
  Json out;
  out["parties"] = v.parties();
  if (paper_order) {
    out["order"] = "display";
    out["labels"] = {"A", "B", "C", "BC", "AC", "AB", "ABC"};
    out["values"] = v.paper_order();
  } else {
    out["order"] = "canonical";
    out["labels"] = v.labels();
    out["values"] = v.values();
  }
  return out;
}

inline Json tip_json(const TipReport& t) {
  return {{"theorem_sum", t.theorem_sum},
          {"corollary_sum", t.corollary_sum},
          {"max_entry", t.max_entry},
          {"refined_threshold", t.refined_threshold},
          {"n_prime", t.n_prime},
          {"conditions_met", t.conditions_met},
          {"theorem_pass", t.theorem_pass},
          {"corollary_pass", t.corollary_pass},
          {"refined_pass", t.refined_pass},
          {"exclusion_advisory", t.exclusion_advisory},
          {"triggered_by", t.triggered_by},
          {"status", t.status}};
}

inline Json cone_json(const EntropyVector& v, const RunConfig& rc) {
  const auto report = membership(v, rc.membership_tol, rc.membership_tol);
  Json margins = Json::array();
  for (const auto& m : report.margins) margins.push_back({{"tag", m.tag}, {"value", m.value}});
  Json out{{"vector", vector_json(v, rc.paper_order && v.parties() == 3)},
           {"margins", std::move(margins)},
           {"inside", report.inside},
           {"violated", report.violated},
           {"saturated", report.saturated},
           {"tip", tip_json(tip_bounds(v, rc.saturation_tol))}};
  if (v.parties() == 3) {
    const auto q = n3_quantities(v);
    out["M"] = q.M;
    out["branch"] = to_string(report.sigma3_branch);
    const auto line = line_ell_check(v, rc.saturation_tol);
    out["line"] = {{"on_line", line.on_line}, {"residuals", line.residuals}};
  }
  if (v.parties() >= 3) {
    const auto cor = corollary_conditions(v, rc.saturation_tol);
    out["corollary"] = {{"holds", cor.holds}, {"total_entropy", cor.total_entropy}, {"residuals", cor.residuals}};
  }
  if (v.parties() == 4) {
    const auto o = n4_ordering_bounds(v, rc.saturation_tol);
    out["ordering"] = {{"singles", o.singles},         {"min_gap", o.min_gap},
                       {"sum_gap", o.sum_gap},         {"largest_margin", o.largest_margin},
                       {"second_margin", o.second_margin}, {"passes", o.passes}};
  }
  return out;
}

inline Json construction_json(const ConstructionResult& r, const Json& params, bool paper_order) {
  const bool po = paper_order && r.claimed.parties() == 3;
  return {{"construction", r.name},
          {"parameters", params},
          {"vector_parties", r.vector_parties.members()},
          {"claimed", vector_json(r.claimed, po)},
          {"claimed_mask", r.claimed_mask},
          {"verified", vector_json(r.verified, po)},
          {"max_claim_residual", r.max_claim_residual},
          {"max_marginal_residual", r.max_marginal_residual},
          {"consistent", r.consistent()}};
}

namespace detail {

inline std::vector<std::size_t> zero_based(const std::vector<std::size_t>& parties, std::size_t n, const char* flag) {
  std::vector<std::size_t> out;
  for (auto p : parties) {
    if (p < 1 || p > n)
      throw InputError(std::string(flag) + ": party " + std::to_string(p) + " out of range 1.." + std::to_string(n));
    out.push_back(p - 1);
  }
  return out;
}

// Parties kept after tracing out `trace_out` (1-based).
inline SubsystemMask kept_parties(std::size_t n, const std::vector<std::size_t>& trace_out) {
  SubsystemMask keep = SubsystemMask::all(n);
  for (auto p : zero_based(trace_out, n, "--trace-out")) keep = keep - SubsystemMask::single(p);
  if (keep.empty()) throw InputError("--trace-out removes every party");
  return keep;
}

inline EntropyVector vector_of(const LoadedState& s, const std::vector<std::size_t>& trace_out) {
  const auto n = s.dims().parties();
  const SubsystemMask keep = kept_parties(n, trace_out);
  if (s.is_pure()) return marginal_entropy_vector(s.pure(), keep);
  return keep == SubsystemMask::all(n) ? entropy_vector(s.mixed()) : entropy_vector(partial_trace(s.mixed(), keep));
}

template <class T>
T field_or(const Json& doc, const char* name, T fallback) {
  if (!doc.contains(name)) return fallback;
  try {
    return doc.at(name).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + name + "' has the wrong type");
  }
}

inline std::vector<Complex> complex_list(const std::vector<double>& re, const char* flag) {
  if (re.empty()) throw InputError(std::string(flag) + " needs at least one coefficient");
  std::vector<Complex> out;
  for (double x : re) out.emplace_back(x);
  return out;
}

inline Json trace_json(const std::vector<TracePoint>& trace) {
  Json out = Json::array();
  for (const auto& t : trace)
    out.push_back({{"stage", t.stage},
                   {"penalty_weight", t.penalty_weight},
                   {"objective", t.objective},
                   {"residual", std::isnan(t.residual) ? Json(nullptr) : Json(t.residual)}});
  return out;
}

inline ProbeConfig probe_config_from_json(const Json& doc, std::size_t default_restarts) {
  ProbeConfig cfg;
  if (doc.contains("dims")) {
    std::vector<std::size_t> dims;
    try {
      dims = doc.at("dims").get<std::vector<std::size_t>>();
    } catch (const Json::exception&) {
      throw InputError("field 'dims' must be an array of positive integers");
    }
    cfg.dims = PartyDims(dims, field_or<std::size_t>(doc, "cap", kDefaultDimensionCap));
  }
  cfg.penalty_weights = field_or(doc, "penalty_weights", cfg.penalty_weights);
  cfg.restarts = field_or<std::size_t>(doc, "restarts", default_restarts);
  cfg.max_iterations = field_or(doc, "max_iterations", cfg.max_iterations);
  cfg.step_tolerance = field_or(doc, "step_tolerance", cfg.step_tolerance);
  cfg.constraint_tolerance = field_or(doc, "constraint_tolerance", cfg.constraint_tolerance);
  cfg.seed = field_or(doc, "seed", cfg.seed);
  cfg.initial_step = field_or(doc, "initial_step", cfg.initial_step);
  cfg.restoration_iterations = field_or(doc, "restoration_iterations", cfg.restoration_iterations);
  cfg.threads = field_or(doc, "threads", cfg.threads);
  if (doc.contains("warm_starts")) {
    const Json& ws = doc["warm_starts"];
    if (!ws.is_array()) throw InputError("field 'warm_starts' must be an array of states");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      auto s = state_from_json(ws[i], cfg.dims.cap());
      if (!s.is_pure()) throw InputError("field 'warm_starts[" + std::to_string(i) + "]' must be a pure state");
      cfg.warm_starts.push_back(s.pure());
    }
  }
  return cfg;
}

inline Json config_echo(const ProbeConfig& cfg) {
  return {{"dims", cfg.dims.values()},
          {"penalty_weights", cfg.penalty_weights},
          {"restarts", cfg.restarts},
          {"max_iterations", cfg.max_iterations},
          {"step_tolerance", cfg.step_tolerance},
          {"constraint_tolerance", cfg.constraint_tolerance},
          {"seed", cfg.seed},
          {"initial_step", cfg.initial_step},
          {"restoration_iterations", cfg.restoration_iterations},
          {"warm_starts", cfg.warm_starts.size()}};
}

}  // namespace detail

// Commands. Each returns an exit code; errors propagate as exceptions and
// are mapped in run_cli.

struct EntropyVectorOptions {
  std::string state_file;
  std::vector<std::size_t> trace_out;
};

inline int cmd_entropy_vector(const EntropyVectorOptions& opt, const RunConfig& rc, std::ostream& out) {
  const auto state = load_state(opt.state_file, rc.cap);
  const auto v = detail::vector_of(state, opt.trace_out);
  if (rc.paper_order && v.parties() != 3) throw InputError("--paper-order applies to three-party vectors only");
  if (rc.format == "json") out << vector_json(v, rc.paper_order).dump(2) << "\n";
  else out << to_csv(v, rc.paper_order);
  return kExitOk;
}

struct ConstructOptions {
  std::string name;
  std::size_t n = 4;
  std::vector<double> a;
  std::optional<double> alpha, beta, gamma, delta;
  std::size_t aux_dim = 2;
  std::string out_file;
};

inline int cmd_construct(const ConstructOptions& opt, const RunConfig& rc, std::ostream& out, std::ostream& err) {
  ConstructionResult r;
  Json params = Json::object();
  std::vector<std::string> warnings;
  if (opt.name == "vN") {
    params["n"] = opt.n;
    r = v_state(opt.n);
  } else if (opt.name == "wN") {
    params["n"] = opt.n;
    r = w_state(opt.n);
  } else if (opt.name == "tilde-v4") {
    if (opt.a.size() != 4) throw InputError("--a needs four coefficients");
    const auto c = detail::complex_list(opt.a, "--a");
    r = tilde_v4({c[0], c[1], c[2], c[3]});
    params["a"] = opt.a;
    const double alpha = r.verified[r.verified.size() - 1];
    params["alpha"] = alpha;
    if (alpha <= kNonzeroEntropy)
      warnings.push_back("H(X4) = 0: party 4 fails the nonzero-entropy hypothesis");
  } else if (opt.name == "family") {
    if (!opt.alpha || !opt.beta || !opt.gamma || !opt.delta)
      throw InputError("family needs --alpha, --beta, --gamma and --delta");
    const auto p = FamilyParams::from_entropies(*opt.alpha, *opt.beta, *opt.gamma, *opt.delta, opt.aux_dim);
    r = four_param_family(p);
    params = {{"alpha", p.alpha()}, {"beta", p.beta()}, {"gamma", p.gamma()}, {"delta", p.delta()},
              {"aux_dim", opt.aux_dim}};
    if (p.alpha() <= kNonzeroEntropy) warnings.push_back("alpha = 0: H(ABC) vanishes, corollary conditions unmet");
  } else {
    throw InputError("unknown construction '" + opt.name + "' (expected vN, wN, tilde-v4 or family)");
  }
  Json report = construction_json(r, params, rc.paper_order);
  report["warnings"] = warnings;
  if (!opt.out_file.empty()) save_state(opt.out_file, r.state);
  else report["state"] = to_json(r.state);
  out << report.dump(2) << "\n";
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return r.consistent() ? kExitOk : kExitVerification;
}

struct ConeCheckOptions {
  std::vector<double> vector;
  std::string state_file;
  std::vector<std::size_t> trace_out;
};

inline int cmd_cone_check(const ConeCheckOptions& opt, const RunConfig& rc, std::ostream& out) {
  std::optional<EntropyVector> v;
  if (!opt.vector.empty() == !opt.state_file.empty()) throw InputError("give exactly one of --vector and --state");
  if (!opt.vector.empty()) {
    const auto len = opt.vector.size();
    std::size_t n = 0;
    while (n < kMaxConeParties && ((std::size_t{1} << (n + 1)) - 1) <= len) ++n;
    if (n == 0 || (std::size_t{1} << n) - 1 != len)
      throw InputError("--vector has " + std::to_string(len) + " entries; expected 2^N - 1");
    if (rc.paper_order) {
      if (n != 3) throw InputError("--paper-order applies to three-party vectors only");
      v = EntropyVector::from_paper_order(opt.vector);
    } else {
      v = EntropyVector(n, opt.vector);
    }
  } else {
    v = detail::vector_of(load_state(opt.state_file, rc.cap), opt.trace_out);
  }
  if (v->parties() > kMaxConeParties) throw InputError("cone checks support at most 6 parties");
  out << cone_json(*v, rc).dump(2) << "\n";
  return kExitOk;
}

struct VerifyLemmasOptions {
  std::string state_file;
  std::size_t party = 1;
};

inline int cmd_verify_lemmas(const VerifyLemmasOptions& opt, const RunConfig& rc, std::ostream& out) {
  const auto state = load_state(opt.state_file, rc.cap);
  if (!state.is_pure())
    throw InputError("'" + opt.state_file + "' holds a density matrix; the lemmas need a pure state, purify it first");
  const auto& psi = state.pure();
  const auto n = psi.parties();
  const auto c = detail::zero_based({opt.party}, n, "--party")[0];

  const auto es = to_eigenbasis(psi);
  const auto eps = epsilons(es, c);
  const auto bounds = eigen_entropy_bound(es);
  bool ok = eps.lemma1 >= kMarginFloor && eps.lemma3 >= kMarginFloor;

  Json margins{{"lemma1", eps.lemma1}, {"lemma3", eps.lemma3}};
  Json bound_json = Json::array();
  for (const auto& b : bounds) {
    bound_json.push_back({{"entropy", b.entropy},
                          {"eps", b.eps},
                          {"bound", b.bound},
                          {"upper_margin", b.upper_margin},
                          {"lower_margin", b.lower_applicable ? Json(b.lower_margin) : Json(nullptr)}});
    ok = ok && b.upper_margin >= kMarginFloor && (!b.lower_applicable || b.lower_margin >= kMarginFloor);
  }
  margins["entropy_bound"] = std::move(bound_json);

  Json hyp;
  std::vector<double> residuals;
  std::vector<std::size_t> others;
  if (n >= 2) {
    const auto products = verify_marginal_product(psi, c);
    for (const auto& p : products.pairs) {
      residuals.push_back(p.residual);
      others.push_back(p.other + 1);
    }
  }
  const double hc = entropy(psi, SubsystemMask::single(c));
  const bool products_hold =
      n >= 2 && std::all_of(residuals.begin(), residuals.end(), [&](double r) { return r <= rc.product_tol; });
  hyp["residuals"] = residuals;
  hyp["pairs_with"] = others;
  hyp["product_tol"] = rc.product_tol;
  hyp["products_hold"] = products_hold;
  hyp["h_constrained"] = hc;

  Json theorem = nullptr;
  if (products_hold) {
    margins["lemma2"] = eps.lemma2;
    ok = ok && eps.lemma2 >= kMarginFloor;
    try {
      const auto t = theorem1_check(psi, c, rc.product_tol);
      theorem = {{"entropy_sum", t.entropy_sum}, {"sum_margin", t.sum_margin},
                 {"eps", t.eps_total},          {"eps_constrained", t.eps_constrained},
                 {"eps_margin", t.eps_margin},  {"proof_margin", t.proof_margin},
                 {"holds", t.holds()}};
      ok = ok && t.holds();
    } catch (const HypothesisError& e) {
      hyp["theorem_skipped"] = e.what();
    }
  } else {
    margins["lemma2"] = nullptr;
    hyp["lemma2_skipped"] = "product hypothesis fails for the constrained party";
  }

  Json report{{"constrained_party", opt.party},
              {"epsilons", eps.eps_i},
              {"eps_total", eps.eps_total},
              {"v111_sq", eps.v111_sq},
              {"tail_sum", eps.tail_sum},
              {"degenerate", es.degenerate},
              {"margins", std::move(margins)},
              {"hypotheses", std::move(hyp)},
              {"theorem1", std::move(theorem)},
              {"passed", ok}};
  out << report.dump(2) << "\n";
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_probe(const std::string& config_file, const RunConfig& rc, std::ostream& out) {
  const Json doc = read_json_file(config_file);
  if (!doc.is_object()) throw InputError("probe config must be a JSON object");
  const auto mode = detail::field_or<std::string>(doc, "mode", "theorem");
  if (mode == "theorem") {
    auto cfg = detail::probe_config_from_json(doc, 20);
    if (!doc.contains("seed")) cfg.seed = rc.seed;
    const auto party = detail::field_or<std::size_t>(doc, "constrained_party", 1);
    const auto c = detail::zero_based({party}, cfg.dims.parties(), "constrained_party")[0];
    const double h_min = detail::field_or(doc, "h_min", 0.1);
    const auto res = minimize(cfg, c, h_min);

    Json restarts = Json::array();
    bool property = true;
    std::size_t feasible = 0;
    for (const auto& r : res.restarts) {
      if (r.feasible) {
        ++feasible;
        property = property && r.entropy_sum > 1.0;
      }
      restarts.push_back({{"index", r.index},
                          {"seed", r.seed},
                          {"warm_start", r.warm_start},
                          {"feasible", r.feasible},
                          {"entropy_sum", r.entropy_sum},
                          {"residual", r.residual},
                          {"h_constrained", r.h_constrained},
                          {"trace", detail::trace_json(r.trace)}});
    }
    const auto v = entropy_vector(res.best_state);
    Json report{{"mode", "theorem"},
                {"config", detail::config_echo(cfg)},
                {"constrained_party", party},
                {"h_min", h_min},
                {"status", res.status},
                {"feasible", res.feasible},
                {"feasible_restarts", feasible},
                {"best_objective", res.best_objective},
                {"constraint_residual", res.constraint_residual},
                {"h_constrained", res.h_constrained},
                {"eps_total", res.eps_total},
                {"best_restart", res.best_restart},
                {"margins",
                 {{"theorem", res.best_objective - 1.0},
                  {"eps", res.eps_total - 0.5},
                  {"tip", v.parties() <= kMaxVectorParties ? tip_json(tip_bounds(v)) : Json(nullptr)}}},
                {"all_feasible_above_one", property},
                {"restarts", std::move(restarts)},
                {"best_state", to_json(res.best_state)}};
    out << report.dump(2) << "\n";
    return property ? kExitOk : kExitVerification;
  }
  if (mode == "scale") {
    auto cfg = detail::probe_config_from_json(doc, 4);
    if (!doc.contains("seed")) cfg.seed = rc.seed;
    if (!doc.contains("dims")) cfg.dims = PartyDims{4, 4, 4, 4};
    EntropyVector target;
    if (doc.contains("target")) {
      const auto t = detail::field_or<std::vector<double>>(doc, "target", {});
      const auto order = detail::field_or<std::string>(doc, "target_order", "canonical");
      if (t.size() != 7) throw InputError("field 'target' must have 7 entries");
      if (order != "canonical" && order != "display") throw InputError("field 'target_order' must be canonical or display");
      target = order == "display" ? EntropyVector::from_paper_order(t) : EntropyVector(3, t);
    } else if (doc.contains("scale")) {
      target = ell_direction().scaled(detail::field_or(doc, "scale", 1.0));
    } else {
      throw InputError("scale probe needs field 'target' or 'scale'");
    }
    const auto rep = scale_feasibility(target, cfg.dims, cfg);
    const auto line = line_ell_check(target);
    Json report{{"mode", "scale"},
                {"config", detail::config_echo(cfg)},
                {"target", vector_json(target, true)},
                {"target_on_line", line.on_line},
                {"distance", rep.distance},
                {"best_restart", rep.best_restart},
                {"best_vector", vector_json(rep.best_vector, true)},
                {"restart_distances", rep.restart_distances},
                {"witness_restarts", rep.restart_warm},
                {"tip", tip_json(rep.tip)},
                {"best_state", to_json(rep.best_state)}};
    out << report.dump(2) << "\n";
    return kExitOk;
  }
  throw InputError("field 'mode' must be theorem or scale");
}

struct Figure2Options {
  std::size_t resolution = 21;
  double max = 2.0;
  std::string out_file;
};

/// Grid over (H(A), H(C), H(ABC)) with H(A) = H(B) and III_XY = 0 for all
/// pairs, i.e. canonical vector (a, a, c, c+t, a+t, a+t, t).
inline std::string figure2_csv(const Figure2Options& opt, const RunConfig& rc) {
  if (opt.resolution < 2) throw InputError("--resolution must be at least 2");
  if (opt.resolution > 256) throw InputError("--resolution must be at most 256");
  if (!(opt.max > 0)) throw InputError("--max must be positive");
  std::string csv = "hA,hC,hABC,inside_sigma3,excluded_by_corollary\n";
  const double step = opt.max / static_cast<double>(opt.resolution - 1);
  for (std::size_t i = 0; i < opt.resolution; ++i)
    for (std::size_t j = 0; j < opt.resolution; ++j)
      for (std::size_t k = 0; k < opt.resolution; ++k) {
        const double a = step * static_cast<double>(i);
        const double c = step * static_cast<double>(j);
        const double t = step * static_cast<double>(k);
        const EntropyVector v(3, {a, a, c, c + t, a + t, a + t, t});
        const bool inside = membership(v, rc.membership_tol).inside;
        const bool excluded = tip_bounds(v, rc.saturation_tol).exclusion_advisory;
        csv += format_real(a) + "," + format_real(c) + "," + format_real(t) + "," + (inside ? "1" : "0") + "," +
               (excluded ? "1" : "0") + "\n";
      }
  return csv;
}

inline int cmd_figure2(const Figure2Options& opt, const RunConfig& rc, std::ostream& out) {
  const auto csv = figure2_csv(opt, rc);
  if (opt.out_file.empty()) out << csv;
  else write_text_file(opt.out_file, csv);
  return kExitOk;
}

/// Parses arguments and runs one subcommand. Exit codes: 0 success,
/// 1 verification failure, 2 input error, 3 numerical failure.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy vectors, entropy-cone checks, constructions and tip probes for multipartite quantum states",
               "qec"};
  app.require_subcommand(1);
  RunConfig rc;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", rc.cap, "Dimension cap for loaded states")->check(CLI::PositiveNumber);
    sub->add_flag("--paper-order", rc.paper_order, "Three-party vectors in (A,B,C,BC,AC,AB,ABC) order");
  };

  EntropyVectorOptions ev;
  auto* ev_cmd = app.add_subcommand("entropy-vector", "Print the entropy vector of a state file");
  ev_cmd->add_option("state", ev.state_file, "State JSON file")->required();
  ev_cmd->add_option("--trace-out", ev.trace_out, "Parties to trace out (1-based)")->delimiter(',');
  ev_cmd->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_common(ev_cmd);

  ConstructOptions co;
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
  auto* co_cmd = app.add_subcommand("construct", "Build a named state and verify its entropy vector");
  co_cmd->add_option("name", co.name, "vN, wN, tilde-v4 or family")->required();
  co_cmd->add_option("--n", co.n, "Number of parties for vN and wN");
  co_cmd->add_option("--a", co.a, "Four real coefficients for tilde-v4")->delimiter(',');
  auto* o_alpha = co_cmd->add_option("--alpha", alpha, "Family parameter alpha in [0, 2]");
  auto* o_beta = co_cmd->add_option("--beta", beta, "Family parameter beta");
  auto* o_gamma = co_cmd->add_option("--gamma", gamma, "Family parameter gamma");
  auto* o_delta = co_cmd->add_option("--delta", delta, "Family parameter delta");
  co_cmd->add_option("--aux-dim", co.aux_dim, "Dimension of the auxiliary pairs in the family")
      ->check(CLI::PositiveNumber);
  co_cmd->add_option("--out", co.out_file, "Write the state JSON here instead of inlining it");
  add_common(co_cmd);

  ConeCheckOptions cc;
  auto* cc_cmd = app.add_subcommand("cone-check", "Margins against Sigma_N and the tip bounds");
  cc_cmd->add_option("--vector", cc.vector, "Comma-separated entropy vector")->delimiter(',');
  cc_cmd->add_option("--state", cc.state_file, "State JSON file");
  cc_cmd->add_option("--trace-out", cc.trace_out, "Parties to trace out (1-based)")->delimiter(',');
  cc_cmd->add_option("--tol", rc.membership_tol, "Membership tolerance")->check(CLI::PositiveNumber);
  cc_cmd->add_option("--saturation-tol", rc.saturation_tol, "Face and condition tolerance")
      ->check(CLI::PositiveNumber);
  add_common(cc_cmd);

  VerifyLemmasOptions vl;
  auto* vl_cmd = app.add_subcommand("verify-lemmas", "Eigenbasis lemma margins for a pure state");
  vl_cmd->add_option("state", vl.state_file, "Pure-state JSON file")->required();
  vl_cmd->add_option("--party", vl.party, "Constrained party (1-based)");
  vl_cmd->add_option("--product-tol", rc.product_tol, "Entrywise product residual tolerance")
      ->check(CLI::PositiveNumber);
  add_common(vl_cmd);

  std::string probe_file;
  auto* pr_cmd = app.add_subcommand("probe", "Run a theorem or scale probe from a JSON config");
  pr_cmd->add_option("config", probe_file, "Probe config JSON file")->required();
  pr_cmd->add_option("--seed", rc.seed, "Seed used when the config has none");

  Figure2Options f2;
  auto* f2_cmd = app.add_subcommand("figure2", "Point cloud of the III = 0, H(A) = H(B) section");
  f2_cmd->add_option("--resolution", f2.resolution, "Grid points per axis");
  f2_cmd->add_option("--max", f2.max, "Upper end of each axis");
  f2_cmd->add_option("--out", f2.out_file, "Output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    rc.validate();
    if (ev_cmd->parsed()) return cmd_entropy_vector(ev, rc, out);
    if (co_cmd->parsed()) {
      if (o_alpha->count()) co.alpha = alpha;
      if (o_beta->count()) co.beta = beta;
      if (o_gamma->count()) co.gamma = gamma;
      if (o_delta->count()) co.delta = delta;
      return cmd_construct(co, rc, out, err);
    }
    if (cc_cmd->parsed()) return cmd_cone_check(cc, rc, out);
    if (vl_cmd->parsed()) return cmd_verify_lemmas(vl, rc, out);
    if (pr_cmd->parsed()) return cmd_probe(probe_file, rc, out);
    if (f2_cmd->parsed()) return cmd_figure2(f2, rc, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace qec::cli

#endif  // QEC_CLI_HPP
