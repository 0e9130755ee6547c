#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "ffproj/projections.hpp"
#include "ffproj/random_sets.hpp"
#include "oracles.hpp"

using namespace ffproj;

namespace {

oracle::PointList points_of(const Subspace& W) {
  auto e = W.elements();
  std::sort(e.begin(), e.end());
  return e;
}

PointSet line_p3() {
  const AmbientSpace s(3, 2);
  PointSetBuilder b(s);
  for (Residue t = 0; t < 3; ++t) b.insert(FpVector({t, t}));
  return b.build();
}

/// Distinct dot-product signatures of E against the generators of V.
std::uint64_t signature_count(const PointSet& E, const Subspace& V) {
  std::set<std::vector<std::uint64_t>> sigs;
  for (PointIndex x : E.indices()) {
    std::vector<std::uint64_t> sig;
    for (const FpVector& v : V.basis()) sig.push_back(oracle::dot(E.space(), x, encode(E.space(), v)));
    sigs.insert(sig);
  }
  return sigs.size();
}

std::vector<PointSet> random_sets(const AmbientSpace& s, std::uint64_t count, std::uint64_t seed) {
  std::vector<PointSet> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(percolation_sample(PercolationModel(s, 0.1 + 0.8 * (i % 5) / 4.0, seed), i));
  }
  return out;
}

}  // namespace

TEST_CASE("image sizes match distinct translates on every subset of F_3^2") {
  const AmbientSpace s(3, 2);
  for (unsigned k = 0; k <= 2; ++k) {
    const auto dirs = enumerate_grassmannian(s, k);
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      const PointSet E = PointSet::from_mask(s, mask);
      for (const Subspace& W : dirs) {
        const ProjectionImage img = project(E, W);
        CHECK(img.size == oracle::image_size(E, points_of(W)));
        CHECK(img.cosets.size() == img.size);
        CHECK(img.degenerate == (k == 0 || k == 2));
      }
    }
  }
}

TEST_CASE("image sizes on random sets in larger spaces") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{3, 3}, {5, 3}, {2, 4}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 1; m < n; ++m) {
      const Directions dirs(s, m);
      for (const PointSet& E : random_sets(s, 10, 17)) {
        const auto sizes = image_sizes(E, dirs);
        const auto profiles = coset_profiles(E, dirs);
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          CHECK(sizes[i] == oracle::image_size(E, points_of(dirs.at(i))));
          CHECK(profiles[i].image_size() == sizes[i]);
          CHECK(profiles[i].total == E.cardinality());
          CHECK(profiles[i].cauchy_schwarz_holds());
          CHECK(sizes[i] <= std::min(E.cardinality(), s.pow(m)));
        }
      }
    }
  }
}

TEST_CASE("every point lies in the coset chosen for it") {
  const AmbientSpace s(5, 2);
  const PointSet E = percolation_sample(PercolationModel(s, 0.4, 3));
  for (const Subspace& W : enumerate_grassmannian(s, 1)) {
    const ProjectionImage img = project(E, W);
    for (const FpVector& x : E.points()) {
      CHECK(std::count_if(img.cosets.begin(), img.cosets.end(),
                          [&](const AffinePlane& A) { return A.contains(x); }) == 1);
    }
  }
}

TEST_CASE("projection onto V agrees with the projection along Per(V)") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {3, 3}, {5, 2}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 0; m <= n; ++m) {
      for (const PointSet& E : random_sets(s, 6, 5)) {
        for (const Subspace& V : enumerate_grassmannian(s, m)) {
          const ProjectionImage onto = project_onto(E, V);
          CHECK(onto.cosets == project(E, perp(V)).cosets);
          CHECK(onto.size == signature_count(E, V));
        }
      }
    }
  }
}

TEST_CASE("Cauchy-Schwarz and the trivial bound on every subset of F_3^2") {
  const AmbientSpace s(3, 2);
  const Directions dirs(s, 1);
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const PointSet E = PointSet::from_mask(s, mask);
    for (const CosetProfile& prof : coset_profiles(E, dirs)) {
      CHECK(prof.cauchy_schwarz_holds());
      CHECK(prof.image_size() <= std::min<std::uint64_t>(E.cardinality(), 3));
      std::uint64_t sq = 0;
      for (std::uint64_t c : prof.counts) sq += c * c;
      CHECK(prof.sum_of_squares() == sq);
    }
  }
}

TEST_CASE("line census at p = 3 with N = 1") {
  const CensusReport r = exceptional_census_small(line_p3(), 1, 1);
  CHECK(r.observed == 1);
  CHECK(r.bound == 4);
  CHECK(r.bound_exact);
  CHECK(r.hypothesis_ok);
  CHECK(r.satisfied);
  CHECK(r.directions == 4);
}

TEST_CASE("full space has no exceptional directions") {
  const AmbientSpace s(3, 3);
  const auto reports = corollary_census(PointSet::full(s), 1, 3.0, 1.0);
  const CensusReport& c = reports[2];
  CHECK(c.kind == CensusKind::corollary_c);
  CHECK(c.observed == 0);
  CHECK(c.satisfied);
  CHECK(c.hypothesis_ok);
  CHECK(c.threshold == 2);
  CHECK_FALSE(reports[0].hypothesis_ok);  // s > m
}

TEST_CASE("small and large censuses match the brute-force count and bound") {
  const std::tuple<std::uint64_t, unsigned, unsigned> configs[] = {{3, 2, 1}, {5, 2, 1}, {3, 3, 1}, {3, 3, 2}};
  for (auto [p, n, m] : configs) {
    const AmbientSpace s(p, n);
    const auto W = oracle::subspaces(s, n - m);
    const std::uint64_t pm = oracle::ipow(p, m);
    for (const PointSet& E : random_sets(s, 20, 99)) {
      std::vector<std::uint64_t> sizes;
      for (const auto& w : W) sizes.push_back(oracle::image_size(E, w));
      for (std::uint64_t N = 1; 2 * N < E.cardinality() && N <= 4; ++N) {
        const CensusReport r = exceptional_census_small(E, m, N);
        CHECK(r.observed == static_cast<std::uint64_t>(std::count_if(
                                sizes.begin(), sizes.end(), [&](std::uint64_t v) { return v <= N; })));
        const Rational bound = Rational(4 * N * oracle::ipow(p, (n - m) * m - m));
        CHECK(r.bound == bound);
        CHECK(r.hypothesis_ok);
        CHECK(r.satisfied);
      }
      if (E.empty()) continue;
      for (const char* d : {"1/10", "1/3", "1/2", "9/10"}) {
        const Rational delta = parse_rational(d);
        const CensusReport r = exceptional_census_large(E, m, delta);
        const Rational scaled = delta * pm;
        const auto threshold = static_cast<std::uint64_t>(
            (boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled)));
        CHECK(r.threshold == threshold);
        CHECK(r.observed == static_cast<std::uint64_t>(std::count_if(
                                sizes.begin(), sizes.end(), [&](std::uint64_t v) { return v <= threshold; })));
        const Rational bound = 2 * delta / (1 - delta) * Rational(oracle::ipow(p, m * (n - m) + m)) /
                               Rational(E.cardinality());
        CHECK(r.bound == bound);
        CHECK(r.hypothesis_ok);
        CHECK(r.satisfied);
      }
    }
  }
}

TEST_CASE("large census at delta = 1/2 holds across 100 seeds") {
  for (auto [p, n, m] : {std::tuple<std::uint64_t, unsigned, unsigned>{3, 2, 1}, {5, 2, 1}, {3, 3, 1}}) {
    const AmbientSpace s(p, n);
    const Directions dirs(s, m);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PointSet E = percolation_sample(PercolationModel(s, 0.5, seed));
      if (E.empty()) continue;
      const CensusReport r = census_large(dirs, E.cardinality(), image_sizes(E, dirs), Rational(1, 2));
      CHECK(r.hypothesis_ok);
      CHECK(r.satisfied);
    }
  }
}

TEST_CASE("hypothesis failures are flagged, not counted as violations") {
  const PointSet line = line_p3();
  const CensusReport big_N = exceptional_census_small(line, 1, 2);
  CHECK_FALSE(big_N.hypothesis_ok);
  CHECK_FALSE(big_N.violated());
  CHECK(big_N.hypothesis_note.find("N") != std::string::npos);

  const CensusReport bad_delta = exceptional_census_large(line, 1, Rational(1));
  CHECK_FALSE(bad_delta.hypothesis_ok);

  const AmbientSpace s(2, 4);
  const CensusReport p2 = exceptional_census_small(percolation_sample(PercolationModel(s, 0.5, 1)), 2, 1);
  CHECK_FALSE(p2.hypothesis_ok);
  CHECK(p2.hypothesis_note.find("range") != std::string::npos);
  CHECK_FALSE(counting_condition_holds(4, 2, 2));
  CHECK(counting_condition_holds(2, 1, 3));
  CHECK(counting_condition_holds(4, 2, 3));
}

TEST_CASE("corollary census thresholds and bounds") {
  const AmbientSpace s(5, 3);
  const Directions dirs(s, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    // |E| near 25, so s = 2 > m = 1: cases (b) apply, (c) does not.
    const PointSet E = percolation_sample(PercolationModel(s, 0.2, seed));
    const auto sizes = image_sizes(E, dirs);
    const auto r = census_corollary(dirs, E.cardinality(), sizes, 2.0, 1.0);
    CHECK(r[1].threshold == 0);  // floor(5 / 10)
    CHECK(r[1].bound == Rational(1, 2) * 5);  // (1/2) 5^{2 - 1}
    CHECK(r[2].threshold == 4);
    CHECK_FALSE(r[2].hypothesis_ok);
    CHECK(r[1].hypothesis_ok == cardinality_in_window(E.cardinality(), 5, 2.0));
    CHECK_FALSE(r[1].violated());
  }
  const AmbientSpace t(31, 2);
  const Directions lines(t, 1);
  const PointSet E = percolation_sample(PercolationModel::with_exponent(t, 1.0, 4));
  const auto r = census_corollary(lines, E.cardinality(), image_sizes(E, lines), 1.0, 1.0);
  CHECK(r[0].threshold == 3);
  CHECK(r[0].bound == Rational(31, 2));
}

TEST_CASE("exact helpers") {
  CHECK(floor_power_over(3, 2, 10) == 0);
  CHECK(floor_power_over(5, 2, 10) == 2);
  CHECK(floor_power_over(31, 1, 10) == 3);
  CHECK(floor_power_over(31, 1.5, 10) == 17);
  CHECK(cardinality_in_window(16, 31, 1));
  CHECK_FALSE(cardinality_in_window(15, 31, 1));
  CHECK(cardinality_in_window(62, 31, 1));
  CHECK_FALSE(cardinality_in_window(63, 31, 1));
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("3") == 3);
  CHECK_THROWS_AS(parse_rational("x"), ContractViolation);
  CHECK_THROWS_AS(parse_rational("1/0"), ContractViolation);
}

TEST_CASE("direction sweeps respect their budget and dump CSV") {
  const AmbientSpace s(3, 2);
  CHECK_THROWS_AS(Directions(s, 1, 3), BudgetExceeded);
  const Directions dirs(s, 1);
  const PointSet E = line_p3();
  std::ostringstream os;
  write_direction_sizes_csv(os, dirs, image_sizes(E, dirs));
  CHECK(os.str() == "direction,image_size\n1 0,3\n1 1,1\n1 2,3\n0 1,3\n");
}
