#include "ffproj/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffproj/energy.hpp"
#include "ffproj/fourier.hpp"
#include "ffproj/parallel.hpp"
#include "ffproj/projections.hpp"
#include "ffproj/random_sets.hpp"
#include "ffproj/report.hpp"
#include "ffproj/verify.hpp"

namespace ffproj::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Globals {
  unsigned threads = 0;
  std::uint64_t budget = kDefaultSubspaceBudget;
  std::string output;
};

struct EnumerateArgs {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned m = 0;
  bool affine = false;
  bool list = false;
  std::string format = "text";
};

struct CensusArgs {
  std::string input;
  unsigned m = 1;
  std::string mode = "small";
  std::uint64_t N = 1;
  std::string delta = "1/2";
  std::optional<double> s;
  std::optional<double> t;
  std::string csv;
  bool per_direction = false;
};

struct VerifyArgs {
  std::vector<std::uint64_t> p{2, 3, 5};
  std::vector<unsigned> n{1, 2, 3};
  std::uint64_t samples = 20;
  std::uint64_t seed = 0;
  std::string fault = "none";
};

struct PercolateArgs {
  std::string regime = "small";
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned m = 1;
  double s = 0;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::uint64_t chebyshev_trials = 0;
  bool per_trial = false;
};

struct SpectrumArgs {
  std::string builtin;
  std::string input;
  std::uint64_t p = 0;
  unsigned n = 0;
  Residue r = 1;
  std::string csv;
  std::optional<double> C;
  std::optional<double> alpha;
  std::optional<unsigned> m;
};

struct EnergyArgs {
  std::string input;
  std::optional<unsigned> m;
  std::vector<Residue> a;
  std::vector<Residue> b;
  std::uint64_t p = 0;
};

struct ProjectArgs {
  std::string input;
  unsigned m = 1;
  bool dual = false;
  std::string csv;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw FormatError("cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw FormatError("failed writing '" + path + "'");
}

void emit(Json doc, const std::vector<CheckResult>& checks, Clock::time_point start,
          const Globals& g, std::ostream& out) {
  doc["manifest"] = make_manifest(doc["config"], checks, seconds_since(start));
  write_to(g.output, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

Json base_config(const char* command, const Globals& g) {
  Json c;
  c["command"] = command;
  c["budget"] = g.budget;
  c["threads"] = g.threads;
  return c;
}

Json set_json(const PointSet& E, const std::string& source) {
  return Json{{"source", source},
              {"p", E.space().p()},
              {"n", E.space().n()},
              {"cardinality", E.cardinality()}};
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void report_failures(const std::vector<CheckResult>& checks, std::ostream& err) {
  for (const CheckResult& c : checks) {
    if (!c.passed) err << "FAILED " << c.name << ": " << c.witness << '\n';
  }
}

int finish(const std::vector<CheckResult>& checks, std::ostream& err) {
  if (all_passed(checks)) return kExitOk;
  report_failures(checks, err);
  return kExitAssertion;
}

int cmd_enumerate(const EnumerateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const AmbientSpace space(a.p, a.n);
  if (a.m > a.n) throw ContractViolation("need m <= n");
  Json config = base_config("enumerate", g);
  config["p"] = a.p;
  config["n"] = a.n;
  config["m"] = a.m;
  config["affine"] = a.affine;
  config["list"] = a.list;
  config["format"] = a.format;

  GaussCount closed = gaussian_binomial(static_cast<int>(a.n), static_cast<int>(a.m), space.p());
  if (a.affine) closed *= space.pow(a.n - a.m);

  std::uint64_t count = 0;
  std::ostringstream text;
  Json listing = Json::array();
  if (a.affine) {
    const std::vector<AffinePlane> planes = enumerate_affine(space, a.m, g.budget);
    count = planes.size();
    if (a.list) {
      for (const AffinePlane& plane : planes) {
        text << "rep " << to_string(plane.rep) << '\n';
        write_subspace(text, plane.direction);
        listing.push_back({{"rep", plane.rep.coords()}, {"direction", subspace_json(plane.direction)}});
      }
    }
  } else {
    for_each_subspace(
        space, a.m,
        [&](const Subspace& W) {
          ++count;
          if (a.list) {
            write_subspace(text, W);
            listing.push_back(subspace_json(W));
          }
        },
        g.budget);
  }

  std::vector<CheckResult> checks{{"count_matches_closed_form", closed == count, 1,
                                   closed == count ? std::string{}
                                                   : "enumerated " + std::to_string(count) +
                                                         ", closed form " + closed.str()}};
  if (a.format == "json") {
    Json doc;
    doc["command"] = "enumerate";
    doc["config"] = config;
    doc["kind"] = a.affine ? "affine" : "grassmannian";
    doc["count"] = count;
    doc["closed_form"] = closed.str();
    if (a.list) doc["items"] = std::move(listing);
    emit(std::move(doc), checks, start, g, out);
  } else {
    write_to(g.output, out, [&](std::ostream& os) { os << count << '\n' << text.str(); });
  }
  return finish(checks, err);
}

int cmd_census(CensusArgs a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const PointSet E = load_point_set(a.input);
  const AmbientSpace& space = E.space();
  if (a.m > space.n()) throw ContractViolation("need m <= n");
  if (a.mode == "corollary") {
    if (!a.s) {
      a.s = E.empty() ? 0.0
                      : std::log(static_cast<double>(E.cardinality())) /
                            std::log(static_cast<double>(space.p()));
    }
    if (!a.t) a.t = a.s;
  }

  Json config = base_config("census", g);
  config["input"] = a.input;
  config["m"] = a.m;
  config["mode"] = a.mode;
  if (a.mode == "small") config["N"] = a.N;
  if (a.mode == "large") config["delta"] = a.delta;
  if (a.mode == "corollary") {
    config["s"] = *a.s;
    config["t"] = *a.t;
  }
  config["csv"] = a.csv;
  config["per_direction"] = a.per_direction;

  const Directions dirs(space, a.m, g.budget);
  const std::vector<std::uint64_t> sizes = image_sizes(E, dirs);
  std::vector<CensusReport> reports;
  if (a.mode == "small") {
    reports.push_back(census_small(dirs, E.cardinality(), sizes, a.N));
  } else if (a.mode == "large") {
    reports.push_back(census_large(dirs, E.cardinality(), sizes, parse_rational(a.delta)));
  } else {
    for (CensusReport& r : census_corollary(dirs, E.cardinality(), sizes, *a.s, *a.t)) {
      reports.push_back(std::move(r));
    }
  }

  if (!a.csv.empty()) {
    write_to(a.csv, out, [&](std::ostream& os) { write_direction_sizes_csv(os, dirs, sizes); });
  }

  Json doc;
  doc["command"] = "census";
  doc["config"] = config;
  doc["set"] = set_json(E, a.input);
  Json list = Json::array();
  std::vector<CheckResult> checks;
  for (const CensusReport& r : reports) {
    list.push_back(to_json(r, a.per_direction));
    CheckResult c{"census_" + to_string(r.kind), !r.violated(), 1, {}};
    if (r.violated()) {
      c.witness = "observed " + std::to_string(r.observed) + " exceeds bound " + r.bound.str();
    }
    checks.push_back(std::move(c));
  }
  doc["reports"] = std::move(list);
  emit(std::move(doc), checks, start, g, out);
  return finish(checks, err);
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Json config = base_config("verify", g);
  config["p"] = a.p;
  config["n"] = a.n;
  config["samples"] = a.samples;
  config["seed"] = a.seed;
  config["inject_fault"] = a.fault;

  VerifyOptions options;
  options.primes = a.p;
  options.dims = a.n;
  options.samples = a.samples;
  options.seed = a.seed;
  options.inject_gaussian_fault = a.fault == "gaussian-off-by-one";
  options.budget = g.budget;
  for (std::uint64_t p : a.p) {
    for (unsigned n : a.n) {
      if (n == 0) throw ContractViolation("verify needs n >= 1");
      const AmbientSpace space(p, n);
      if (space.point_count() > kSpectrumBudget) {
        throw BudgetExceeded("verify grid point p=" + std::to_string(p) + " n=" + std::to_string(n) +
                             " exceeds the spectrum budget");
      }
    }
  }
  const std::vector<CheckResult> checks = run_identity_suite(options);

  Json doc;
  doc["command"] = "verify";
  doc["config"] = config;
  std::uint64_t instances = 0;
  for (const CheckResult& c : checks) instances += c.instances;
  doc["instances"] = instances;
  emit(std::move(doc), checks, start, g, out);
  return finish(checks, err);
}

int cmd_percolate(const PercolateArgs& a, const Globals& g, std::ostream& out) {
  const auto start = Clock::now();
  Json config = base_config("percolate", g);
  config["regime"] = a.regime;
  config["p"] = a.p;
  config["n"] = a.n;
  config["m"] = a.m;
  config["s"] = a.s;
  config["trials"] = a.trials;
  config["seed"] = a.seed;
  config["chebyshev_trials"] = a.chebyshev_trials;
  config["per_trial"] = a.per_trial;

  const PercolationReport report =
      a.regime == "small" ? verify_small_regime(a.p, a.n, a.m, a.s, a.trials, a.seed, g.budget)
                          : verify_large_regime(a.p, a.n, a.m, a.s, a.trials, a.seed, g.budget);
  Json doc;
  doc["command"] = "percolate";
  doc["config"] = config;
  doc["report"] = to_json(report, a.per_trial);

  // Statistical outcomes are recorded, never fatal.
  std::vector<CheckResult> checks;
  if (a.regime == "small") checks.push_back({"mu_chain", report.mu.holds, 1, {}});
  if (a.chebyshev_trials > 0) {
    const ChebyshevCheck cheb = chebyshev_size_check(
        PercolationModel::with_exponent(AmbientSpace(a.p, a.n), a.s, a.seed), a.chebyshev_trials);
    doc["chebyshev"] = to_json(cheb);
    checks.push_back({"chebyshev", cheb.passed, cheb.trials, {}});
  }
  emit(std::move(doc), checks, start, g, out);
  return kExitOk;
}

int cmd_spectrum(const SpectrumArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  if (a.builtin.empty() == a.input.empty()) {
    throw ContractViolation("spectrum needs exactly one of --builtin or --input");
  }
  if (a.C.has_value() != a.alpha.has_value()) {
    throw ContractViolation("--C and --alpha go together");
  }
  std::optional<PointSet> loaded;
  std::string source;
  if (!a.input.empty()) {
    loaded = load_point_set(a.input);
    source = a.input;
  } else {
    if (a.p == 0 || a.n == 0) throw ContractViolation("builtin sets need --p and --n");
    const AmbientSpace space(a.p, a.n);
    if (a.builtin == "paraboloid") {
      loaded = paraboloid(space);
      source = "paraboloid";
    } else {
      loaded = sphere(space, a.r);
      source = "sphere r=" + std::to_string(a.r);
    }
  }
  const PointSet& E = *loaded;
  const AmbientSpace& space = E.space();

  Json config = base_config("spectrum", g);
  if (a.input.empty()) {
    config["builtin"] = a.builtin;
    config["p"] = a.p;
    config["n"] = a.n;
    if (a.builtin == "sphere") config["r"] = a.r;
  } else {
    config["input"] = a.input;
  }
  config["csv"] = a.csv;
  if (a.C) {
    config["C"] = *a.C;
    config["alpha"] = *a.alpha;
    if (a.m) config["m"] = *a.m;
  }

  const Spectrum S = dft(E);
  if (!a.csv.empty()) write_to(a.csv, out, [&](std::ostream& os) { write_spectrum_csv(os, S); });

  Json doc;
  doc["command"] = "spectrum";
  doc["config"] = config;
  doc["set"] = set_json(E, source);
  std::vector<CheckResult> checks;

  const PlancherelCheck pl = plancherel_check(S);
  doc["plancherel"] = {{"lhs", pl.lhs}, {"rhs", pl.rhs}, {"ok", pl.ok}};
  checks.push_back({"plancherel", pl.ok, 1, pl.ok ? "" : "sum " + std::to_string(pl.lhs) +
                                                            " vs " + std::to_string(pl.rhs)});

  if (E.empty() || E.cardinality() == space.point_count()) {
    doc["decay"] = nullptr;
  } else {
    const DecayReport decay = salem_deficiency(S);
    doc["decay"] = to_json(decay, space);
    checks.push_back({"plancherel_floor", decay.plancherel_floor_ok, 1,
                      decay.plancherel_floor_ok ? "" : "max below floor"});
  }

  if (a.C) {
    const SalemProfile profile(*a.C, *a.alpha);
    std::vector<unsigned> ms;
    if (a.m) {
      ms.push_back(*a.m);
    } else {
      for (unsigned m = 1; m < space.n(); ++m) ms.push_back(m);
    }
    Json bounds = Json::array();
    for (unsigned m : ms) {
      const FourierProjectionReport r = fourier_projection_bounds(E, S, profile, m, g.budget);
      bounds.push_back(to_json(r));
      checks.push_back({"projection_bounds_m" + std::to_string(m), r.holds(), r.directions,
                        r.holds() ? "" : "min image " + std::to_string(r.min_image)});
    }
    doc["projection_bounds"] = std::move(bounds);
  }
  emit(std::move(doc), checks, start, g, out);
  return finish(checks, err);
}

int cmd_energy(const EnergyArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const bool additive = !a.a.empty() || !a.b.empty();
  if (a.input.empty() && !additive) throw ContractViolation("energy needs --input or --a/--b");
  Json config = base_config("energy", g);
  Json doc;
  doc["command"] = "energy";
  std::vector<CheckResult> checks;
  Json body;

  if (!a.input.empty()) {
    const PointSet E = load_point_set(a.input);
    const unsigned n = E.space().n();
    config["input"] = a.input;
    if (a.m) {
      if (*a.m > n) throw ContractViolation("need m <= n");
      config["m"] = *a.m;
    }
    body["set"] = set_json(E, a.input);
    std::vector<unsigned> ms;
    if (a.m) {
      ms.push_back(*a.m);
    } else {
      for (unsigned m = 0; m <= n; ++m) ms.push_back(m);
    }
    Json identities = Json::array();
    CheckResult comb_check{"energy_identity_combinatorial", true, 0, {}};
    CheckResult four_check{"energy_identity_fourier", true, 0, {}};
    CheckResult lemma_check{"key_lemma", true, 0, {}};
    Json lemmas = Json::array();
    for (unsigned m : ms) {
      const EnergyIdentity comb = verify_energy_identity(E, m, g.budget);
      const FourierEnergyIdentity four = verify_energy_identity_fourier(E, m, kSpectralTolerance, g.budget);
      identities.push_back({{"m", m}, {"combinatorial", to_json(comb)}, {"fourier", to_json(four)}});
      ++comb_check.instances;
      ++four_check.instances;
      if (!comb.equal && comb_check.passed) {
        comb_check.passed = false;
        comb_check.witness = "m=" + std::to_string(m) + ": " + comb.lhs.str() + " vs " + comb.rhs.str();
      }
      if (!four.ok && four_check.passed) {
        four_check.passed = false;
        four_check.witness = "m=" + std::to_string(m) + ": diff " + std::to_string(four.max_abs_diff);
      }
      if (m >= 1 && m < n) {
        // Planes of dimension n-m, so the key lemma runs at codimension m.
        const std::vector<Subspace> theta = enumerate_grassmannian(E.space(), n - m, g.budget);
        const KeyLemmaCheck k = key_lemma_check(E, m, theta);
        lemmas.push_back(to_json(k));
        ++lemma_check.instances;
        if (!k.ok() && lemma_check.passed) {
          lemma_check.passed = false;
          lemma_check.witness = "m=" + std::to_string(m) + ": energy " + std::to_string(k.energy);
        }
      }
    }
    body["identities"] = std::move(identities);
    body["key_lemma"] = std::move(lemmas);
    checks.push_back(comb_check);
    checks.push_back(four_check);
    if (lemma_check.instances) checks.push_back(lemma_check);
  }

  if (additive) {
    if (a.p == 0) throw ContractViolation("additive energy needs --p");
    const AmbientSpace plane(a.p, 2);
    config["a"] = a.a;
    config["b"] = a.b;
    config["p"] = a.p;
    const std::uint64_t direct = additive_energy(a.a, a.b, plane.p());
    PointSetBuilder builder(plane);
    for (Residue x : a.a) {
      for (Residue y : a.b) builder.insert(FpVector({x, y}));
    }
    const PointSet product = std::move(builder).build();
    const EnergyValue via_lines = energy(product, PlaneFamily::sum_lines(plane));
    body["additive"] = {{"energy", direct}, {"via_sum_lines", via_lines}};
    checks.push_back({"additive_energy_vs_sum_lines", direct == via_lines, 1,
                      direct == via_lines ? ""
                                          : std::to_string(direct) + " vs " + std::to_string(via_lines)});
  }

  doc["config"] = config;
  for (auto& [key, value] : body.items()) doc[key] = value;
  emit(std::move(doc), checks, start, g, out);
  return finish(checks, err);
}

int cmd_project(const ProjectArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const PointSet E = load_point_set(a.input);
  const AmbientSpace& space = E.space();
  if (a.m > space.n()) throw ContractViolation("need m <= n");
  Json config = base_config("project", g);
  config["input"] = a.input;
  config["m"] = a.m;
  config["dual"] = a.dual;
  config["csv"] = a.csv;

  const Directions dirs(space, a.m, g.budget);
  const std::vector<CosetProfile> profiles = coset_profiles(E, dirs);
  std::vector<std::uint64_t> sizes;
  sizes.reserve(profiles.size());
  for (const CosetProfile& prof : profiles) sizes.push_back(prof.image_size());
  if (!a.csv.empty()) {
    write_to(a.csv, out, [&](std::ostream& os) { write_direction_sizes_csv(os, dirs, sizes); });
  }

  const std::uint64_t cap = std::min(E.cardinality(), space.pow(a.m));
  CheckResult bound{"projection_size_bound", true, 0, {}};
  CheckResult cs{"cauchy_schwarz", true, 0, {}};
  Json list = Json::array();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    list.push_back({{"direction", subspace_json(dirs.at(i))}, {"image_size", sizes[i]}});
    ++bound.instances;
    ++cs.instances;
    const bool in_range = sizes[i] <= cap && (E.empty() || sizes[i] >= 1);
    if (!in_range && bound.passed) {
      bound.passed = false;
      bound.witness = "direction " + std::to_string(i) + " image " + std::to_string(sizes[i]);
    }
    if (!profiles[i].cauchy_schwarz_holds() && cs.passed) {
      cs.passed = false;
      cs.witness = "direction " + std::to_string(i);
    }
  }

  Json doc;
  doc["command"] = "project";
  doc["config"] = config;
  doc["set"] = set_json(E, a.input);
  doc["directions"] = std::move(list);
  doc["min_image"] = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
  doc["max_image"] = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  doc["full_directions"] = std::count(sizes.begin(), sizes.end(), space.pow(a.m));
  std::vector<CheckResult> checks{bound, cs};

  if (a.dual) {
    CheckResult duality{"projection_duality", true, 0, {}};
    Json dual = Json::array();
    for (const Subspace& V : enumerate_grassmannian(space, a.m, g.budget)) {
      const ProjectionImage onto = project_onto(E, V);
      const ProjectionImage along = project(E, perp(V));
      const bool same = onto.cosets == along.cosets;
      dual.push_back({{"subspace", subspace_json(V)}, {"image_size", onto.size}, {"matches", same}});
      ++duality.instances;
      if (!same && duality.passed) {
        duality.passed = false;
        std::ostringstream os;
        write_subspace(os, V);
        duality.witness = os.str();
      }
    }
    doc["dual"] = std::move(dual);
    checks.push_back(duality);
  }
  emit(std::move(doc), checks, start, g, out);
  return finish(checks, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-field projection experiments", "ffproj"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file of option values; command-line flags win");

  Globals g;
  app.add_option("--threads", g.threads, "Worker thread cap (0 = hardware concurrency)");
  app.add_option("--budget", g.budget, "Subspace enumeration budget")->envname(kBudgetEnv);
  app.add_option("-o,--output", g.output, "Write the report to this file");

  EnumerateArgs ea;
  CLI::App* enumerate = app.add_subcommand("enumerate", "Count or list G(n,m) or A(n,m)");
  enumerate->add_option("--p", ea.p, "Prime")->required();
  enumerate->add_option("--n", ea.n, "Dimension")->required();
  enumerate->add_option("--m", ea.m, "Subspace dimension")->required();
  enumerate->add_flag("--affine", ea.affine, "Enumerate affine planes");
  enumerate->add_flag("--list", ea.list, "Serialize every element");
  enumerate->add_option("--format", ea.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CensusArgs ca;
  CLI::App* census = app.add_subcommand("census", "Exceptional-direction census of a point set");
  census->add_option("--input", ca.input, "ffpointset file")->required();
  census->add_option("--m", ca.m, "Codimension of the directions")->required();
  census->add_option("--mode", ca.mode, "small, large or corollary")
      ->check(CLI::IsMember({"small", "large", "corollary"}));
  census->add_option("--N", ca.N, "Image-size threshold for small mode");
  census->add_option("--delta", ca.delta, "Fraction of p^m for large mode (e.g. 1/2)");
  census->add_option("--s", ca.s, "Size exponent for corollary mode (default log_p |E|)");
  census->add_option("--t", ca.t, "Threshold exponent for corollary case (a) (default s)");
  census->add_option("--csv", ca.csv, "Write per-direction image sizes as CSV");
  census->add_flag("--per-direction", ca.per_direction, "Embed per-direction sizes in the report");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run the exact identity suite over a (p,n) grid");
  verify->add_option("--p", va.p, "Primes")->delimiter(',');
  verify->add_option("--n", va.n, "Dimensions")->delimiter(',');
  verify->add_option("--samples", va.samples, "Random subsets per large space");
  verify->add_option("--seed", va.seed, "Sampling seed");
  verify->add_option("--inject-fault", va.fault, "none or gaussian-off-by-one")
      ->check(CLI::IsMember({"none", "gaussian-off-by-one"}));

  PercolateArgs pa;
  CLI::App* percolate = app.add_subcommand("percolate", "Seeded percolation campaign");
  percolate->add_option("--regime", pa.regime, "small or large")
      ->check(CLI::IsMember({"small", "large"}));
  percolate->add_option("--p", pa.p, "Prime")->required();
  percolate->add_option("--n", pa.n, "Dimension")->required();
  percolate->add_option("--m", pa.m, "Codimension of the directions");
  percolate->add_option("--s", pa.s, "Density exponent, delta = p^(s-n)")->required();
  percolate->add_option("--trials", pa.trials, "Number of trials");
  percolate->add_option("--seed", pa.seed, "Seed");
  percolate->add_option("--chebyshev-trials", pa.chebyshev_trials, "Trials for the size concentration check");
  percolate->add_flag("--per-trial", pa.per_trial, "Embed per-trial records");

  SpectrumArgs sa;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Fourier spectrum and decay of a point set");
  spectrum->add_option("--builtin", sa.builtin, "paraboloid or sphere")
      ->check(CLI::IsMember({"paraboloid", "sphere"}));
  spectrum->add_option("--input", sa.input, "ffpointset file");
  spectrum->add_option("--p", sa.p, "Prime for builtin sets");
  spectrum->add_option("--n", sa.n, "Dimension for builtin sets");
  spectrum->add_option("--r", sa.r, "Sphere radius");
  spectrum->add_option("--csv", sa.csv, "Write the full spectrum as CSV");
  spectrum->add_option("--C", sa.C, "Decay constant C");
  spectrum->add_option("--alpha", sa.alpha, "Decay exponent alpha");
  spectrum->add_option("--m", sa.m, "Codimension for projection bounds (default all)");

  EnergyArgs na;
  CLI::App* energy_cmd = app.add_subcommand("energy", "Plane energies and their identities");
  energy_cmd->add_option("--input", na.input, "ffpointset file");
  energy_cmd->add_option("--m", na.m, "Plane dimension (default all)");
  energy_cmd->add_option("--a", na.a, "Residues of A for additive energy")->delimiter(',');
  energy_cmd->add_option("--b", na.b, "Residues of B for additive energy")->delimiter(',');
  energy_cmd->add_option("--p", na.p, "Prime for additive energy");

  ProjectArgs ja;
  CLI::App* project_cmd = app.add_subcommand("project", "Image sizes over every direction");
  project_cmd->add_option("--input", ja.input, "ffpointset file")->required();
  project_cmd->add_option("--m", ja.m, "Codimension of the directions")->required();
  project_cmd->add_flag("--dual", ja.dual, "Also compare P_V(E) with the Per(V) projection");
  project_cmd->add_option("--csv", ja.csv, "Write per-direction image sizes as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  set_thread_limit(g.threads);
  try {
    if (enumerate->parsed()) return cmd_enumerate(ea, g, out, err);
    if (census->parsed()) return cmd_census(ca, g, out, err);
    if (verify->parsed()) return cmd_verify(va, g, out, err);
    if (percolate->parsed()) return cmd_percolate(pa, g, out);
    if (spectrum->parsed()) return cmd_spectrum(sa, g, out, err);
    if (energy_cmd->parsed()) return cmd_energy(na, g, out, err);
    if (project_cmd->parsed()) return cmd_project(ja, g, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ffproj::cli
