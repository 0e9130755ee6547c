#include "ffproj/random_sets.hpp"

#include <algorithm>
#include <cmath>

#include "ffproj/parallel.hpp"
#include "ffproj/projections.hpp"

namespace ffproj {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

PercolationModel::PercolationModel(AmbientSpace space, double delta, std::uint64_t seed)
    : space_(std::move(space)), delta_(delta), seed_(seed) {
  if (!(delta >= 0 && delta <= 1)) throw ContractViolation("delta must lie in [0, 1]");
}

PercolationModel PercolationModel::with_exponent(AmbientSpace space, double s, std::uint64_t seed) {
  if (!(s <= static_cast<double>(space.n()))) throw ContractViolation("need s <= n");
  const double delta = std::pow(static_cast<double>(space.p()), s - static_cast<double>(space.n()));
  PercolationModel model(std::move(space), std::min(1.0, delta), seed);
  model.s_ = s;
  return model;
}

PointSet percolation_sample(const PercolationModel& model, std::uint64_t trial) {
  const AmbientSpace& space = model.space();
  const std::uint64_t stream = splitmix64(model.seed() ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
  PointSetBuilder builder(space);
  for (PointIndex idx = 0; idx < space.point_count(); ++idx) {
    if (uniform01(splitmix64(stream ^ (idx * 0xD1B54A32D192ED03ULL))) < model.delta()) {
      builder.insert(idx);
    }
  }
  return std::move(builder).build();
}

double chernoff_bound(std::uint64_t N, double delta_prime) {
  if (N < 1) throw ContractViolation("chernoff_bound needs N >= 1");
  if (!(delta_prime >= 0 && delta_prime <= 1)) throw ContractViolation("delta' must lie in [0, 1]");
  return std::exp(-static_cast<double>(N) * delta_prime / 16.0);
}

MuChain mu_lower_bound(std::uint64_t p, unsigned n, unsigned m, double s) {
  if (!(s > 0) || s > static_cast<double>(m)) throw ContractViolation("mu bound needs 0 < s <= m");
  if (m > n) throw ContractViolation("need m <= n");
  const double pd = static_cast<double>(p);
  const double md = static_cast<double>(m);
  MuChain chain;
  chain.delta = std::pow(pd, s - static_cast<double>(n));
  chain.delta_prime = 1.0 - std::pow(1.0 - chain.delta, std::pow(pd, static_cast<double>(n - m)));
  const double pm = std::pow(pd, md);
  chain.mu = pm * chain.delta_prime;
  const double x = std::pow(pd, s - md);
  chain.exp_bound = pm * (1.0 - std::exp(-x));
  chain.taylor_bound = pm * (x - 5.0 * x * x / 6.0);
  chain.floor = std::pow(pd, s) / 6.0;
  // Relative slack absorbs rounding when links are equal (e.g. n = m).
  auto geq = [](double a, double b) { return a >= b * (1 - 1e-12); };
  chain.holds = geq(chain.mu, chain.exp_bound) && geq(chain.exp_bound, chain.taylor_bound) &&
                geq(chain.taylor_bound, chain.floor);
  return chain;
}

std::optional<std::uint64_t> smallest_prime_with_mu_chain(unsigned n, unsigned m, double s,
                                                          std::span<const std::uint64_t> primes) {
  std::optional<std::uint64_t> first;
  for (std::uint64_t p : primes) {
    if (mu_lower_bound(p, n, m, s).holds) {
      if (!first) first = p;
    } else {
      first.reset();
    }
  }
  return first;
}

std::string to_string(Regime regime) { return regime == Regime::small ? "small" : "large"; }

namespace {

PercolationReport run_campaign(Regime regime, std::uint64_t p, unsigned n, unsigned m, double s,
                               std::uint64_t trials, std::uint64_t seed, std::uint64_t budget) {
  const AmbientSpace space(p, n);
  if (m < 1 || m >= n) throw ContractViolation("percolation campaigns need 1 <= m <= n-1");
  const double md = static_cast<double>(m);
  if (regime == Regime::small && !(s > 0 && s <= md)) {
    throw ContractViolation("small regime needs 0 < s <= m");
  }
  if (regime == Regime::large && !(s > md && s <= static_cast<double>(n))) {
    throw ContractViolation("large regime needs m < s <= n");
  }
  const PercolationModel model = PercolationModel::with_exponent(space, s, seed);
  const Directions dirs(space, m, budget);
  const std::uint64_t full = space.pow(m);

  PercolationReport report;
  report.regime = regime;
  report.p = space.p();
  report.n = n;
  report.m = m;
  report.s = s;
  report.delta = model.delta();
  report.seed = seed;
  report.trials = trials;
  report.directions = dirs.size();
  report.mu = regime == Regime::small ? mu_lower_bound(p, n, m, s) : MuChain{};
  if (regime == Regime::large) {
    const double pd = static_cast<double>(p);
    report.mu.delta = model.delta();
    report.mu.delta_prime = 1.0 - std::pow(1.0 - model.delta(), std::pow(pd, static_cast<double>(n - m)));
    report.mu.mu = std::pow(pd, md) * report.mu.delta_prime;
  }

  report.records.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const PointSet E = percolation_sample(model, t);
    const auto sizes = image_sizes(E, dirs);
    TrialRecord& rec = report.records[t];
    rec.cardinality = E.cardinality();
    rec.min_image = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
    rec.in_window = cardinality_in_window(rec.cardinality, p, s);
    rec.all_full = std::all_of(sizes.begin(), sizes.end(), [&](std::uint64_t v) { return v == full; });
    rec.above_mu_half = static_cast<double>(rec.min_image) > report.mu.mu / 2.0;
    for (std::uint64_t v : sizes) rec.empty_planes += full - v;
    rec.success = regime == Regime::small
                      ? rec.in_window && 24 * rec.min_image >= rec.cardinality
                      : rec.all_full;
  });

  std::uint64_t successes = 0, windowed = 0, full_count = 0, mu_violations = 0, missed = 0;
  long double min_sum = 0;
  report.min_image_min = trials ? report.records.front().min_image : 0;
  for (const TrialRecord& rec : report.records) {
    successes += rec.success;
    windowed += rec.in_window;
    full_count += rec.all_full;
    mu_violations += !rec.above_mu_half;
    missed += rec.empty_planes;
    min_sum += rec.min_image;
    report.min_image_min = std::min(report.min_image_min, rec.min_image);
  }
  const double denom = trials ? static_cast<double>(trials) : 1.0;
  report.success_rate = static_cast<double>(successes) / denom;
  report.size_window_pass = static_cast<double>(windowed) / denom;
  report.all_full_rate = static_cast<double>(full_count) / denom;
  report.min_image_mean = static_cast<double>(min_sum / denom);
  report.mu_half_violation_rate = static_cast<double>(mu_violations) / denom;

  const double pd = static_cast<double>(p);
  const double gauss = gaussian_binomial(static_cast<int>(n), static_cast<int>(m), p).convert_to<double>();
  report.union_bound_gauss = gauss * std::exp(-report.mu.mu / 16.0);
  report.union_bound_exponent = 2.0 * std::pow(pd, md * static_cast<double>(n - m)) * std::exp(-std::pow(pd, s) / 96.0);

  report.plane_count = dirs.size() * full;
  report.plane_miss_rate = static_cast<double>(missed) / (denom * static_cast<double>(report.plane_count));
  report.plane_miss_exact = std::pow(1.0 - model.delta(), std::pow(pd, static_cast<double>(n - m)));
  report.plane_miss_bound = std::exp(-std::pow(pd, s - md));
  return report;
}

}  // namespace

PercolationReport verify_small_regime(std::uint64_t p, unsigned n, unsigned m, double s,
                                      std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t budget) {
  return run_campaign(Regime::small, p, n, m, s, trials, seed, budget);
}

PercolationReport verify_large_regime(std::uint64_t p, unsigned n, unsigned m, double s,
                                      std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t budget) {
  return run_campaign(Regime::large, p, n, m, s, trials, seed, budget);
}

ChebyshevCheck chebyshev_size_check(const PercolationModel& model, std::uint64_t trials) {
  if (!(model.delta() > 0)) throw ContractViolation("Chebyshev check needs delta > 0");
  if (trials == 0) throw ContractViolation("Chebyshev check needs at least one trial");
  const double expected = static_cast<double>(model.space().point_count()) * model.delta();
  std::vector<std::uint64_t> sizes(trials);
  parallel_for(static_cast<std::size_t>(trials),
               [&](std::size_t t) { sizes[t] = percolation_sample(model, t).cardinality(); });
  ChebyshevCheck check;
  check.trials = trials;
  std::uint64_t deviations = 0;
  long double sum = 0;
  for (std::uint64_t size : sizes) {
    sum += size;
    if (std::abs(static_cast<double>(size) - expected) > expected / 2) ++deviations;
  }
  check.mean_cardinality = static_cast<double>(sum / trials);
  check.deviation_rate = static_cast<double>(deviations) / static_cast<double>(trials);
  check.pass_rate = 1.0 - check.deviation_rate;
  check.bound = std::min(1.0, 4.0 * (1.0 - model.delta()) / expected);
  check.slack = 3.0 * std::sqrt(check.bound * (1.0 - check.bound) / static_cast<double>(trials));
  check.passed = check.deviation_rate <= check.bound + check.slack;
  return check;
}

}  // namespace ffproj
