#include "ffproj/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ffproj/fourier.hpp"

namespace ffproj {

PlaneFamily::PlaneFamily(std::vector<AffinePlane> planes) {
  for (AffinePlane& plane : planes) add(std::move(plane));
}

void PlaneFamily::add(AffinePlane plane) {
  if (!planes_.empty()) {
    const AffinePlane& first = planes_.front();
    if (!(first.direction.space() == plane.direction.space())) {
      throw ContractViolation("plane family mixes ambient spaces");
    }
    if (first.dim() != plane.dim()) throw ContractViolation("plane family mixes dimensions");
  }
  planes_.push_back(std::move(plane));
}

PlaneFamily PlaneFamily::expand(std::span<const Subspace> theta) {
  std::vector<AffinePlane> planes;
  for (const Subspace& W : theta) {
    const CosetIndexer indexer(W);
    for (std::uint64_t label = 0; label < indexer.coset_count(); ++label) {
      planes.push_back(indexer.plane(label));
    }
  }
  return PlaneFamily(std::move(planes));
}

PlaneFamily PlaneFamily::all(const AmbientSpace& space, unsigned m, std::uint64_t budget) {
  return PlaneFamily(enumerate_affine(space, m, budget));
}

PlaneFamily PlaneFamily::sum_lines(const AmbientSpace& plane) {
  if (plane.n() != 2) throw ContractViolation("sum lines live in F_p^2");
  const std::uint32_t p = plane.p();
  const std::vector<FpVector> direction{FpVector({1, p - 1})};
  const Subspace W = Subspace::span(plane, direction);
  std::vector<AffinePlane> lines;
  for (Residue k = 0; k < p; ++k) lines.push_back(coset_of(W, FpVector({k, 0})));
  return PlaneFamily(std::move(lines));
}

EnergyValue energy(const PointSet& E, const PlaneFamily& family) {
  if (family.size() == 0) return 0;
  if (!(family.planes().front().direction.space() == E.space())) {
    throw ContractViolation("plane family and point set differ in space");
  }
  std::map<Subspace, std::vector<const AffinePlane*>> by_direction;
  for (const AffinePlane& plane : family.planes()) by_direction[plane.direction].push_back(&plane);
  EnergyValue total = 0;
  for (const auto& [W, planes] : by_direction) {
    const CosetProfile profile = coset_profile(E, W);
    const CosetIndexer indexer(W);
    for (const AffinePlane* plane : planes) {
      const std::uint64_t c = profile.counts[indexer.label(plane->rep)];
      total += c * c;
    }
  }
  return total;
}

EnergyValue energy_all_planes(const PointSet& E, unsigned m, std::uint64_t budget) {
  // Directions with codimension n - m are exactly G(n, m).
  const Directions dirs(E.space(), E.space().n() - m, budget);
  EnergyValue total = 0;
  for (const CosetProfile& profile : coset_profiles(E, dirs)) total += profile.sum_of_squares();
  return total;
}

namespace {

GaussCount closed_form_energy(const PointSet& E, unsigned m) {
  const int n = static_cast<int>(E.space().n());
  const int mi = static_cast<int>(m);
  const std::uint32_t p = E.space().p();
  const GaussCount size = E.cardinality();
  return size * pow_exact(p, m) * subspace_count(n - 1, mi, p) +
         size * size * subspace_count(n - 1, mi - 1, p);
}

}  // namespace

EnergyIdentity verify_energy_identity(const PointSet& E, unsigned m, std::uint64_t budget) {
  if (m > E.space().n()) throw ContractViolation("plane dimension exceeds n");
  EnergyIdentity out;
  out.lhs = energy_all_planes(E, m, budget);
  out.rhs = closed_form_energy(E, m);
  out.equal = out.lhs == out.rhs;
  return out;
}

FourierEnergyIdentity verify_energy_identity_fourier(const PointSet& E, unsigned m,
                                                     double tolerance, std::uint64_t budget) {
  const AmbientSpace& space = E.space();
  if (m > space.n()) throw ContractViolation("plane dimension exceeds n");
  const Spectrum S = dft(E);
  const double scale = std::pow(static_cast<double>(space.p()),
                                static_cast<double>(m) - static_cast<double>(space.n()));

  FourierEnergyIdentity out;
  double spectral = 0;
  for_each_subspace(
      space, m,
      [&](const Subspace& W) {
        perp(W).for_each_element([&](PointIndex xi) { spectral += S.power(xi); });
      },
      budget);
  out.spectral_sum = scale * spectral;

  double nonzero = 0;
  for (PointIndex xi = 1; xi < space.point_count(); ++xi) nonzero += S.power(xi);
  const int n = static_cast<int>(space.n());
  const int mi = static_cast<int>(m);
  out.collapsed = scale * (subspace_count(n - 1, mi, space.p()).convert_to<double>() * nonzero +
                           subspace_count(n, mi, space.p()).convert_to<double>() * S.power(0));

  out.rhs = closed_form_energy(E, m);
  const double exact = out.rhs.convert_to<double>();
  out.max_abs_diff = std::max(std::abs(out.spectral_sum - exact), std::abs(out.collapsed - exact));
  out.ok = out.max_abs_diff <= tolerance * std::max(1.0, exact);
  return out;
}

std::uint64_t additive_energy(std::span<const Residue> A, std::span<const Residue> B,
                              std::uint32_t p) {
  std::vector<char> in_a(p, 0), in_b(p, 0);
  for (Residue a : A) {
    if (a >= p) throw ContractViolation("residue out of range");
    in_a[a] = 1;
  }
  for (Residue b : B) {
    if (b >= p) throw ContractViolation("residue out of range");
    in_b[b] = 1;
  }
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < p; ++a) {
    if (!in_a[a]) continue;
    for (std::uint32_t a2 = 0; a2 < p; ++a2) {
      if (!in_a[a2]) continue;
      for (std::uint32_t b = 0; b < p; ++b) {
        if (!in_b[b]) continue;
        // b' is forced: b' = a + b - a'.
        const std::uint32_t b2 = static_cast<std::uint32_t>((std::uint64_t{a} + b + p - a2) % p);
        if (in_b[b2]) ++count;
      }
    }
  }
  return count;
}

KeyLemmaCheck key_lemma_check(const PointSet& E, unsigned m, std::span<const Subspace> theta) {
  const AmbientSpace& space = E.space();
  const unsigned n = space.n();
  if (m < 1 || m >= n) throw ContractViolation("key lemma needs 1 <= m <= n-1");
  for (const Subspace& W : theta) {
    if (!(W.space() == space) || W.dim() != n - m) {
      throw ContractViolation("theta must hold (n-m)-dimensional subspaces of the same space");
    }
  }
  KeyLemmaCheck check;
  check.m = m;
  check.cardinality = E.cardinality();
  check.theta_size = theta.size();
  check.energy = energy(E, PlaneFamily::expand(theta));

  const std::uint32_t p = space.p();
  const GaussCount size = E.cardinality();
  const GaussCount count = theta.size();
  check.bound_pairs = Rational(size * count + 2 * size * size * pow_exact(p, (n - m - 1) * m));
  check.bound_spectral = Rational(2 * size * pow_exact(p, (n - m) * m)) +
                         Rational(size * size * count, pow_exact(p, m));
  const bool small = size <= pow_exact(p, m);
  check.preferred = small ? "pairs" : "spectral";
  check.condition_holds = counting_condition_holds(n, m, p);
  check.bounds_hold = Rational(check.energy) <= check.min_bound();
  check.regime_consistent = !small || check.bound_pairs <= check.bound_spectral;
  return check;
}

}  // namespace ffproj
