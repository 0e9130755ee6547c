#pragma once

#include <cstdint>
#include <vector>

#include "ffproj/report.hpp"

namespace ffproj {

struct VerifyOptions {
  std::vector<std::uint64_t> primes{2, 3, 5};
  std::vector<unsigned> dims{1, 2, 3};
  /// Random subsets per (p, n) when the space is too large for all subsets.
  std::uint64_t samples = 20;
  std::uint64_t seed = 0;
  /// Spaces with at most this many points are checked on every subset.
  std::uint64_t exhaustive_points = 9;
  /// Negative control: adds one to the closed-form subspace count.
  bool inject_gaussian_fault = false;
  std::uint64_t budget = kDefaultSubspaceBudget;
};

/// Runs the exact identity suite (subspace counts, recurrences, Per, character
/// sums, Plancherel on subspaces, the plane-energy identity by both routes,
/// Cauchy-Schwarz, projection duality) over the (p, n) grid.
std::vector<CheckResult> run_identity_suite(const VerifyOptions& options);

/// Subsets used by the suite for one space: all of them when small, otherwise
/// seeded percolation samples of varying density plus the empty and full sets.
std::vector<PointSet> suite_subsets(const AmbientSpace& space, const VerifyOptions& options);

}  // namespace ffproj
