#include <doctest.h>

#include "ffproj/energy.hpp"
#include "ffproj/random_sets.hpp"
#include "oracles.hpp"

using namespace ffproj;

namespace {

std::uint64_t closed_form(std::uint64_t size, unsigned n, unsigned m, std::uint64_t p) {
  const auto g1 = static_cast<std::uint64_t>(oracle::gaussian(n - 1, m, p));
  const auto g2 = m == 0 ? 0 : static_cast<std::uint64_t>(oracle::gaussian(n - 1, m - 1, p));
  return size * oracle::ipow(p, m) * g1 + size * size * g2;
}

std::vector<PointSet> samples(const AmbientSpace& s, std::uint64_t count, std::uint64_t seed) {
  std::vector<PointSet> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(percolation_sample(PercolationModel(s, 0.05 + 0.9 * (i % 7) / 6.0, seed), i));
  }
  return out;
}

}  // namespace

TEST_CASE("plane energy matches direct intersection counts") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {3, 3}, {5, 2}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 0; m <= n; ++m) {
      const PlaneFamily all = PlaneFamily::all(s, m);
      for (const PointSet& E : samples(s, 8, 11)) {
        const std::uint64_t brute = oracle::plane_energy(E, m);
        CHECK(energy(E, all) == brute);
        CHECK(energy_all_planes(E, m) == brute);
      }
    }
  }
}

TEST_CASE("plane-energy identity on every subset of F_3^2") {
  const AmbientSpace s(3, 2);
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const PointSet E = PointSet::from_mask(s, mask);
    for (unsigned m = 0; m <= 2; ++m) {
      const EnergyIdentity id = verify_energy_identity(E, m);
      CHECK(id.equal);
      CHECK(id.rhs == closed_form(E.cardinality(), 2, m, 3));
      const FourierEnergyIdentity f = verify_energy_identity_fourier(E, m);
      CHECK(f.ok);
      CHECK(f.rhs == id.rhs);
    }
  }
}

TEST_CASE("plane-energy identity on random sets") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{5, 2}, {2, 3}, {3, 3}, {2, 4}, {5, 3}}) {
    const AmbientSpace s(p, n);
    for (const PointSet& E : samples(s, 12, 23)) {
      for (unsigned m = 0; m <= n; ++m) {
        const EnergyIdentity id = verify_energy_identity(E, m);
        CHECK(id.equal);
        CHECK(id.lhs == closed_form(E.cardinality(), n, m, p));
        CHECK(verify_energy_identity_fourier(E, m).ok);
      }
    }
  }
}

TEST_CASE("energy over an expanded direction family") {
  const AmbientSpace s(3, 3);
  const auto lines = enumerate_grassmannian(s, 1);
  const std::vector<Subspace> theta(lines.begin(), lines.begin() + 5);
  const PlaneFamily fam = PlaneFamily::expand(theta);
  CHECK(fam.size() == 5 * 9);
  for (const PointSet& E : samples(s, 6, 2)) {
    std::uint64_t brute = 0;
    for (const Subspace& W : theta) {
      auto pts = W.elements();
      for (PointIndex x = 0; x < s.point_count(); ++x) {
        oracle::PointList plane;
        for (PointIndex w : pts) plane.push_back(oracle::add(s, x, w));
        const std::uint64_t k = oracle::intersection(E, plane);
        brute += k * k;
      }
    }
    // Each coset was visited once per point in it.
    CHECK(energy(E, fam) * 3 == brute);
  }
}

TEST_CASE("plane families reject mixed inputs") {
  const AmbientSpace s(3, 2), t(5, 2);
  const auto a = enumerate_affine(s, 1);
  const auto pt = enumerate_affine(s, 0);
  const auto other = enumerate_affine(t, 1);
  CHECK_THROWS_AS(PlaneFamily({a[0], pt[0]}), ContractViolation);
  CHECK_THROWS_AS(PlaneFamily({a[0], other[0]}), ContractViolation);
  CHECK_THROWS_AS(PlaneFamily::all(s, 3), ContractViolation);
  CHECK_THROWS_AS(energy(PointSet(t), PlaneFamily::all(s, 1)), ContractViolation);
}

TEST_CASE("additive energy equals energy along sum lines") {
  const std::uint32_t p = 7;
  const AmbientSpace plane(p, 2);
  const std::vector<std::vector<Residue>> sets{{}, {0}, {0, 1, 2}, {1, 3, 5, 6}, {0, 1, 2, 3, 4, 5, 6}};
  for (const auto& A : sets) {
    for (const auto& B : sets) {
      std::uint64_t brute = 0;
      for (Residue a : A)
        for (Residue a2 : A)
          for (Residue b : B)
            for (Residue b2 : B) brute += (a + b) % p == (a2 + b2) % p;
      CHECK(additive_energy(A, B, p) == brute);
      PointSetBuilder builder(plane);
      for (Residue a : A)
        for (Residue b : B) builder.insert(FpVector({a, b}));
      CHECK(energy(builder.build(), PlaneFamily::sum_lines(plane)) == brute);
    }
  }
  const std::vector<Residue> bad{7};
  CHECK_THROWS_AS(additive_energy(bad, bad, p), ContractViolation);
  CHECK(PlaneFamily::sum_lines(plane).size() == p);
}

TEST_CASE("key lemma bounds on direction families") {
  for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{3, 2}, {5, 2}, {3, 3}, {5, 3}}) {
    const AmbientSpace s(p, n);
    for (unsigned m = 1; m < n; ++m) {
      const auto dirs = enumerate_grassmannian(s, n - m);
      for (std::size_t take : {std::size_t{1}, dirs.size() / 2, dirs.size()}) {
        const std::vector<Subspace> theta(dirs.begin(), dirs.begin() + static_cast<long>(take));
        for (const PointSet& E : samples(s, 8, 31)) {
          const KeyLemmaCheck k = key_lemma_check(E, m, theta);
          const std::uint64_t e = E.cardinality();
          const Rational pairs = Rational(e * take + 2 * e * e * oracle::ipow(p, (n - m - 1) * m));
          const Rational spectral = Rational(2 * e * oracle::ipow(p, (n - m) * m)) +
                                    Rational(e * e * take) / oracle::ipow(p, m);
          CHECK(k.bound_pairs == pairs);
          CHECK(k.bound_spectral == spectral);
          CHECK(k.condition_holds);
          CHECK(Rational(k.energy) <= pairs);
          CHECK(Rational(k.energy) <= spectral);
          CHECK(k.ok());
          if (e <= oracle::ipow(p, m)) {
            CHECK(k.preferred == "pairs");
            CHECK(pairs <= spectral);
          }
        }
      }
    }
  }
  const AmbientSpace s(3, 2);
  const auto wrong = enumerate_grassmannian(s, 2);
  CHECK_THROWS_AS(key_lemma_check(PointSet(s), 1, wrong), ContractViolation);
  CHECK_THROWS_AS(key_lemma_check(PointSet(s), 2, wrong), ContractViolation);
}
