#include "ffproj/report.hpp"

#include <cstdio>

namespace ffproj {

Json subspace_json(const Subspace& W) {
  Json rows = Json::array();
  for (unsigned i = 0; i < W.dim(); ++i) {
    const auto r = W.row(i);
    rows.push_back(std::vector<Residue>(r.begin(), r.end()));
  }
  return rows;
}

Json to_json(const CensusReport& r, bool with_directions) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["p"] = r.p;
  j["n"] = r.n;
  j["m"] = r.m;
  j["cardinality"] = r.cardinality;
  j["threshold"] = r.threshold;
  j["threshold_label"] = r.threshold_label;
  j["directions"] = r.directions;
  j["observed"] = r.observed;
  j["bound_num"] = boost::multiprecision::numerator(r.bound).str();
  j["bound_den"] = boost::multiprecision::denominator(r.bound).str();
  j["bound_exact"] = r.bound_exact;
  j["bound"] = r.bound_value;
  j["satisfied"] = r.satisfied;
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["hypothesis_note"] = r.hypothesis_note;
  if (with_directions) j["per_direction"] = r.per_direction;
  return j;
}

Json to_json(const MuChain& c) {
  Json j;
  j["delta"] = c.delta;
  j["delta_prime"] = c.delta_prime;
  j["mu"] = c.mu;
  j["exp_bound"] = c.exp_bound;
  j["taylor_bound"] = c.taylor_bound;
  j["floor"] = c.floor;
  j["holds"] = c.holds;
  return j;
}

Json to_json(const PercolationReport& r, bool with_trials) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["m"] = r.m;
  j["s"] = r.s;
  j["delta"] = r.delta;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["size_window_pass"] = r.size_window_pass;
  j["min_projection_stats"] = {{"min", r.min_image_min}, {"mean", r.min_image_mean}};
  j["success_rate"] = r.success_rate;
  j["theorem"] = to_string(r.regime);
  j["directions"] = r.directions;
  j["all_full_rate"] = r.all_full_rate;
  if (r.regime == Regime::small) {
    j["threshold"] = "min_W |pi^W(E)| >= |E|/24";
    j["mu_chain"] = to_json(r.mu);
    j["mu_half_violation_rate"] = r.mu_half_violation_rate;
    j["union_bounds"] = {{"gaussian", r.union_bound_gauss}, {"exponent", r.union_bound_exponent}};
  } else {
    j["threshold"] = "|pi^W(E)| = p^m for all W";
    j["plane_count"] = r.plane_count;
    j["plane_miss"] = {{"empirical", r.plane_miss_rate},
                       {"exact", r.plane_miss_exact},
                       {"bound", r.plane_miss_bound}};
  }
  if (with_trials) {
    Json trials = Json::array();
    for (const TrialRecord& t : r.records) {
      trials.push_back({{"cardinality", t.cardinality},
                        {"min_image", t.min_image},
                        {"in_window", t.in_window},
                        {"all_full", t.all_full},
                        {"success", t.success}});
    }
    j["per_trial"] = std::move(trials);
  }
  return j;
}

Json to_json(const ChebyshevCheck& c) {
  Json j;
  j["trials"] = c.trials;
  j["deviation_rate"] = c.deviation_rate;
  j["pass_rate"] = c.pass_rate;
  j["bound"] = c.bound;
  j["slack"] = c.slack;
  j["mean_cardinality"] = c.mean_cardinality;
  j["passed"] = c.passed;
  return j;
}

Json to_json(const DecayReport& r, const AmbientSpace& space) {
  Json j;
  j["cardinality"] = r.cardinality;
  j["max_nonzero_modulus"] = r.max_nonzero_modulus;
  j["ratio_salem"] = r.ratio_salem;
  j["ratio_weak"] = r.ratio_weak;
  j["witness"] = decode(space, r.witness).coords();
  j["witness_index"] = r.witness;
  j["plancherel_floor"] = r.plancherel_floor;
  j["plancherel_floor_ok"] = r.plancherel_floor_ok;
  return j;
}

Json to_json(const FourierProjectionReport& r) {
  Json j;
  j["m"] = r.m;
  j["C"] = r.C;
  j["alpha"] = r.alpha;
  j["cardinality"] = r.cardinality;
  j["max_nonzero_modulus"] = r.max_nonzero_modulus;
  j["profile_satisfied"] = r.profile_satisfied;
  j["constants"] = {{"C1", r.C1}, {"C2", r.C2}, {"C3", r.C3}};
  j["threshold_ab"] = r.threshold_ab;
  j["threshold_c"] = r.threshold_c;
  j["cases"] = {{"a", r.case_a}, {"b", r.case_b}, {"c", r.case_c}};
  j["required"] = {{"a", r.required_a}, {"b", r.required_b}, {"c", r.required_c}};
  j["directions"] = r.directions;
  j["min_image"] = r.min_image;
  j["conclusions"] = {{"a", r.conclusion_a}, {"b", r.conclusion_b}, {"c", r.conclusion_c}};
  j["holds"] = r.holds();
  return j;
}

Json to_json(const EnergyIdentity& e) {
  return Json{{"lhs", e.lhs.str()}, {"rhs", e.rhs.str()}, {"equal", e.equal}};
}

Json to_json(const FourierEnergyIdentity& e) {
  return Json{{"spectral_sum", e.spectral_sum},
              {"collapsed", e.collapsed},
              {"rhs", e.rhs.str()},
              {"max_abs_diff", e.max_abs_diff},
              {"ok", e.ok}};
}

Json to_json(const KeyLemmaCheck& c) {
  Json j;
  j["m"] = c.m;
  j["cardinality"] = c.cardinality;
  j["theta_size"] = c.theta_size;
  j["energy"] = c.energy;
  j["bound_pairs"] = c.bound_pairs.str();
  j["bound_spectral"] = c.bound_spectral.str();
  j["preferred"] = c.preferred;
  j["condition_holds"] = c.condition_holds;
  j["bounds_hold"] = c.bounds_hold;
  j["regime_consistent"] = c.regime_consistent;
  j["ok"] = c.ok();
  return j;
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json make_manifest(const Json& config, const std::vector<CheckResult>& checks,
                   double wall_clock_seconds) {
  Json list = Json::array();
  bool all = true;
  for (const CheckResult& c : checks) {
    Json item{{"name", c.name}, {"passed", c.passed}, {"instances", c.instances}};
    if (!c.witness.empty()) item["witness"] = c.witness;
    list.push_back(std::move(item));
    all = all && c.passed;
  }
  Json j;
  j["version"] = kArtifactVersion;
  j["config_hash"] = config_hash(config);
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["checks"] = std::move(list);
  j["passed"] = all;
  return j;
}

}  // namespace ffproj
