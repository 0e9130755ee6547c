#include <doctest.h>

#include <set>
#include <sstream>

#include "ffproj/subspaces.hpp"
#include "oracles.hpp"

using namespace ffproj;

namespace {

oracle::PointList points_of(const Subspace& W) {
  auto e = W.elements();
  std::sort(e.begin(), e.end());
  return e;
}

std::string big(unsigned __int128 v) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v);
  return s;
}

}  // namespace

TEST_CASE("gaussian binomial known values") {
  CHECK(gaussian_binomial(2, 1, 3) == 4);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(2, 2, 3) == 1);
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(5, 0, 7) == 1);
  CHECK(gaussian_binomial(3, 1, 5) == 31);
  CHECK_THROWS_AS(gaussian_binomial(2, 3, 3), ContractViolation);
  CHECK_THROWS_AS(gaussian_binomial(2, -1, 3), ContractViolation);
  CHECK_THROWS_AS(gaussian_binomial(2, 1, 6), ContractViolation);
  CHECK(subspace_count(2, 3, 3) == 0);
  CHECK(subspace_count(2, -1, 3) == 0);
}

TEST_CASE("gaussian binomial matches the product formula beyond enumeration") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    for (unsigned n = 0; n <= 8; ++n) {
      for (unsigned m = 0; m <= n; ++m) {
        CHECK(gaussian_binomial(static_cast<int>(n), static_cast<int>(m), p).str() ==
              big(oracle::gaussian(n, m, p)));
      }
    }
  }
  // {26 13}_2 needs more than 64 bits.
  CHECK(gaussian_binomial(26, 13, 2) > GaussCount(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("enumeration agrees with spanning every tuple") {
  const std::pair<std::uint64_t, unsigned> grid[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1},
                                                     {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 2}};
  for (auto [p, n] : grid) {
    const AmbientSpace s(p, n);
    for (unsigned m = 0; m <= n; ++m) {
      CAPTURE(p);
      CAPTURE(n);
      CAPTURE(m);
      std::set<oracle::PointList> ours;
      for (const Subspace& W : enumerate_grassmannian(s, m)) {
        CHECK(W.dim() == m);
        ours.insert(points_of(W));
      }
      CHECK(ours == oracle::subspaces(s, m));
      std::set<oracle::PointList> planes;
      for (const AffinePlane& A : enumerate_affine(s, m)) {
        oracle::PointList pts;
        for (PointIndex w : A.direction.elements()) pts.push_back(oracle::add(s, encode(s, A.rep), w));
        std::sort(pts.begin(), pts.end());
        planes.insert(pts);
      }
      CHECK(planes == oracle::affine_planes(s, m));
      CHECK(planes.size() == enumerate_affine(s, m).size());
    }
  }
}

TEST_CASE("range condition holds for odd p and fails only at p = 2") {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    for (int n = 0; n <= 7; ++n) {
      for (int m = 0; m <= n; ++m) CHECK(check_range_condition(n, m, p));
    }
  }
  CHECK_FALSE(check_range_condition(4, 2, 2));  // 35 > 2 * 16
  CHECK(check_range_condition(2, 1, 2));        // 3 <= 4
  CHECK(check_range_condition(3, 1, 2));        // 4 <= 7 <= 8
}

TEST_CASE("pascal recurrences and symmetry") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int n = 1; n <= 7; ++n) {
      for (int m = 1; m <= n; ++m) CHECK(verify_pascal_identities(n, m, p));
    }
  }
  CHECK_THROWS_AS(verify_pascal_identities(3, 0, 2), ContractViolation);
}

TEST_CASE("span is canonical") {
  const AmbientSpace s(5, 3);
  const std::vector<FpVector> a{FpVector({1, 2, 3}), FpVector({0, 1, 4})};
  const std::vector<FpVector> b{FpVector({1, 3, 2}), FpVector({2, 4, 1}), FpVector({0, 0, 1})};
  const Subspace U = Subspace::span(s, a);
  CHECK(U.dim() == 2);
  CHECK(points_of(U) == oracle::span(s, {encode(s, a[0]), encode(s, a[1])}));
  const std::vector<FpVector> scaled{scale(s, 2, a[0]), add(s, a[0], a[1])};
  CHECK(Subspace::span(s, scaled) == U);
  CHECK(Subspace::span(s, std::vector<FpVector>{FpVector({0, 0, 0})}) == Subspace::zero(s));
  CHECK(Subspace::full(s).dim() == 3);
  CHECK(Subspace::span(s, b).dim() == 3);
}

TEST_CASE("perp matches the orthogonal complement by brute force") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {3, 3}, {5, 2}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 0; m <= n; ++m) {
      std::set<Subspace> images;
      for (const Subspace& W : enumerate_grassmannian(s, m)) {
        const Subspace P = perp(W);
        CHECK(P.dim() == n - m);
        CHECK(points_of(P) == oracle::perp(s, points_of(W)));
        CHECK(perp(P) == W);
        images.insert(P);
      }
      CHECK(images.size() == enumerate_grassmannian(s, n - m).size());
    }
  }
}

TEST_CASE("cosets partition the space and labels are a bijection") {
  const AmbientSpace s(3, 3);
  for (unsigned m = 0; m <= 3; ++m) {
    for (const Subspace& W : enumerate_grassmannian(s, m)) {
      const CosetIndexer idx(W);
      CHECK(idx.coset_count() == s.pow(3 - m));
      std::vector<std::uint64_t> hits(idx.coset_count(), 0);
      for (PointIndex i = 0; i < s.point_count(); ++i) {
        const FpVector x = decode(s, i);
        const std::uint64_t label = idx.label(x);
        REQUIRE(label < idx.coset_count());
        ++hits[label];
        const AffinePlane A = idx.plane(label);
        CHECK(A.contains(x));
        CHECK(A == coset_of(W, x));
        CHECK(W.reduce(x) == A.rep);
      }
      for (std::uint64_t h : hits) CHECK(h == W.element_count());
    }
  }
}

TEST_CASE("subspaces through a point and perps through a point") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 0; m <= n; ++m) {
      const auto all = oracle::subspaces(s, m);
      for (PointIndex xi = 1; xi < s.point_count(); ++xi) {
        std::uint64_t through = 0, perp_through = 0;
        for (const auto& V : all) {
          through += std::binary_search(V.begin(), V.end(), xi);
          const auto P = oracle::perp(s, V);
          perp_through += std::binary_search(P.begin(), P.end(), xi);
        }
        const FpVector x = decode(s, xi);
        CHECK(count_subspaces_containing(s, x, m) == through);
        CHECK(count_subspaces_with_perp_containing(s, x, m) == perp_through);
        CHECK(verify_subspace_counts(s, x, m).ok());
      }
      CHECK_THROWS_AS(count_subspaces_containing(s, FpVector::zero(n), m), ContractViolation);
    }
  }
}

TEST_CASE("enumeration respects its budget") {
  const AmbientSpace s(2, 4);
  CHECK_THROWS_AS(enumerate_grassmannian(s, 2, 34), BudgetExceeded);
  CHECK(enumerate_grassmannian(s, 2, 35).size() == 35);
  CHECK_THROWS_AS(enumerate_affine(s, 2, 35), BudgetExceeded);
}

TEST_CASE("enumeration order is fixed") {
  const AmbientSpace s(3, 2);
  const auto lines = enumerate_grassmannian(s, 1);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].basis_vector(0) == FpVector({1, 0}));
  CHECK(lines[1].basis_vector(0) == FpVector({1, 1}));
  CHECK(lines[2].basis_vector(0) == FpVector({1, 2}));
  CHECK(lines[3].basis_vector(0) == FpVector({0, 1}));
}

TEST_CASE("subspace serialization round-trips and validates") {
  const AmbientSpace s(5, 3);
  for (const Subspace& W : enumerate_grassmannian(s, 2)) {
    std::stringstream io;
    write_subspace(io, W);
    CHECK(read_subspace(io) == W);
  }
  std::istringstream not_reduced("subspace p=3 n=2 m=1\n2,1\n");
  CHECK_THROWS_AS(read_subspace(not_reduced), FormatError);
  std::istringstream short_rows("subspace p=3 n=2 m=2\n1,0\n");
  CHECK_THROWS_AS(read_subspace(short_rows), FormatError);
}
