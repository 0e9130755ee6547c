#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffproj/core.hpp"
#include "ffproj/projections.hpp"
#include "ffproj/subspaces.hpp"

namespace ffproj {

using EnergyValue = std::uint64_t;

/// A finite family of affine planes of one dimension in one space.
class PlaneFamily {
 public:
  explicit PlaneFamily(std::vector<AffinePlane> planes);

  /// Theta': every coset of every direction in theta.
  static PlaneFamily expand(std::span<const Subspace> theta);
  /// A(n, m).
  static PlaneFamily all(const AmbientSpace& space, unsigned m,
                         std::uint64_t budget = kDefaultSubspaceBudget);
  /// The lines x + y = k in F_p^2, k = 0..p-1.
  static PlaneFamily sum_lines(const AmbientSpace& plane);

  const std::vector<AffinePlane>& planes() const noexcept { return planes_; }
  std::size_t size() const noexcept { return planes_.size(); }
  void add(AffinePlane plane);

 private:
  std::vector<AffinePlane> planes_;
};

/// Sum over the family of |E cap plane|^2, via one coset profile per distinct direction.
EnergyValue energy(const PointSet& E, const PlaneFamily& family);

/// Energy over all of A(n, m) without materialising the planes.
EnergyValue energy_all_planes(const PointSet& E, unsigned m,
                              std::uint64_t budget = kDefaultSubspaceBudget);

struct EnergyIdentity {
  GaussCount lhs;  // energy over A(n,m)
  GaussCount rhs;  // |E| p^m {n-1 m} + |E|^2 {n-1 m-1}
  bool equal = false;
};
EnergyIdentity verify_energy_identity(const PointSet& E, unsigned m,
                                      std::uint64_t budget = kDefaultSubspaceBudget);

struct FourierEnergyIdentity {
  /// p^{m-n} sum_{W in G(n,m)} sum_{xi in Per(W)} |E^(xi)|^2
  double spectral_sum = 0;
  /// p^{m-n} ({n-1 m} sum_{xi != 0} |E^(xi)|^2 + {n m} |E^(0)|^2)
  double collapsed = 0;
  GaussCount rhs;
  double max_abs_diff = 0;
  bool ok = false;
};
FourierEnergyIdentity verify_energy_identity_fourier(const PointSet& E, unsigned m,
                                                     double tolerance = 1e-9,
                                                     std::uint64_t budget = kDefaultSubspaceBudget);

/// |{(a, a', b, b') in A x A x B x B : a + b = a' + b'}|, counted directly.
std::uint64_t additive_energy(std::span<const Residue> A, std::span<const Residue> B,
                              std::uint32_t p);

struct KeyLemmaCheck {
  unsigned m = 0;
  std::uint64_t cardinality = 0;
  std::uint64_t theta_size = 0;
  EnergyValue energy = 0;
  Rational bound_pairs;     // |E||Theta| + 2|E|^2 p^{(n-m-1)m}
  Rational bound_spectral;  // 2|E| p^{(n-m)m} + |E|^2 |Theta| p^{-m}
  /// The bound the exceptional-set argument picks: pairs when |E| <= p^m.
  std::string preferred;
  bool condition_holds = false;
  bool bounds_hold = false;
  /// For |E| <= p^m the pairs bound is the smaller one.
  bool regime_consistent = false;

  bool ok() const { return !condition_holds || (bounds_hold && regime_consistent); }
  Rational min_bound() const { return bound_pairs < bound_spectral ? bound_pairs : bound_spectral; }
};
/// theta must consist of (n-m)-dimensional subspaces.
KeyLemmaCheck key_lemma_check(const PointSet& E, unsigned m, std::span<const Subspace> theta);

}  // namespace ffproj
