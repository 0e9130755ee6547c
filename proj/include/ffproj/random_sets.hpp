#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffproj/core.hpp"
#include "ffproj/subspaces.hpp"

namespace ffproj {

/// Omega(F_p^n, delta): each point kept independently with probability delta.
/// Sampling is counter-based: the decision for a point depends only on
/// (seed, trial, point index).
class PercolationModel {
 public:
  PercolationModel(AmbientSpace space, double delta, std::uint64_t seed);
  /// delta = p^{s-n}
  static PercolationModel with_exponent(AmbientSpace space, double s, std::uint64_t seed);

  const AmbientSpace& space() const noexcept { return space_; }
  double delta() const noexcept { return delta_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::optional<double> exponent() const noexcept { return s_; }

 private:
  AmbientSpace space_;
  double delta_;
  std::uint64_t seed_;
  std::optional<double> s_;
};

PointSet percolation_sample(const PercolationModel& model, std::uint64_t trial = 0);

/// e^{-N delta' / 16}: bound on P(sum of N Bernoulli(delta') < mu/2).
double chernoff_bound(std::uint64_t N, double delta_prime);

/// The chain mu >= p^m(1 - e^{-p^{s-m}}) >= p^m(p^{s-m} - 5p^{2(s-m)}/6) >= p^s/6.
struct MuChain {
  double delta = 0;
  double delta_prime = 0;  // 1 - (1 - delta)^{p^{n-m}}
  double mu = 0;           // p^m delta'
  double exp_bound = 0;
  double taylor_bound = 0;
  double floor = 0;  // p^s / 6
  bool holds = false;
};
MuChain mu_lower_bound(std::uint64_t p, unsigned n, unsigned m, double s);
/// First prime of the grid from which the chain holds for every later grid prime.
std::optional<std::uint64_t> smallest_prime_with_mu_chain(unsigned n, unsigned m, double s,
                                                          std::span<const std::uint64_t> primes);

enum class Regime { small, large };
std::string to_string(Regime regime);

struct TrialRecord {
  std::uint64_t cardinality = 0;
  std::uint64_t min_image = 0;
  bool in_window = false;  // p^s/2 <= |E| <= 2p^s
  bool all_full = false;   // every projection has p^m cosets
  bool above_mu_half = false;
  std::uint64_t empty_planes = 0;  // planes of A(n, n-m) missed by E
  bool success = false;
};

struct PercolationReport {
  Regime regime = Regime::small;
  std::uint32_t p = 0;
  unsigned n = 0, m = 0;
  double s = 0;
  double delta = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t directions = 0;
  std::vector<TrialRecord> records;

  double success_rate = 0;
  double size_window_pass = 0;
  double all_full_rate = 0;
  std::uint64_t min_image_min = 0;
  double min_image_mean = 0;

  MuChain mu;
  /// Empirical frequency of some W with |pi^W(E)| <= mu/2, with its union bounds.
  double mu_half_violation_rate = 0;
  double union_bound_gauss = 0;  // {n m}_p e^{-mu/16}
  double union_bound_exponent = 0;  // 2p^{m(n-m)} e^{-p^s/96}

  std::uint64_t plane_count = 0;  // |A(n, n-m)|
  double plane_miss_rate = 0;
  double plane_miss_exact = 0;  // (1-delta)^{p^{n-m}}
  double plane_miss_bound = 0;  // e^{-p^{s-m}}
};

/// Regime 0 < s <= m: success = |E| in window and min_W |pi^W(E)| >= |E|/24.
PercolationReport verify_small_regime(std::uint64_t p, unsigned n, unsigned m, double s,
                                      std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t budget = kDefaultSubspaceBudget);
/// Regime m < s <= n: success = every projection full.
PercolationReport verify_large_regime(std::uint64_t p, unsigned n, unsigned m, double s,
                                      std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t budget = kDefaultSubspaceBudget);

struct ChebyshevCheck {
  std::uint64_t trials = 0;
  double deviation_rate = 0;  // frequency of ||E| - p^n delta| > p^n delta / 2
  double pass_rate = 0;       // 1 - deviation_rate
  double bound = 0;           // 4(1-delta)/(p^n delta), capped at 1
  double slack = 0;           // three binomial standard deviations of the frequency
  double mean_cardinality = 0;
  bool passed = false;
};
ChebyshevCheck chebyshev_size_check(const PercolationModel& model, std::uint64_t trials);

}  // namespace ffproj
