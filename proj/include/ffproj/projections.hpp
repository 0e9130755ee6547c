#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffproj/core.hpp"
#include "ffproj/subspaces.hpp"

namespace ffproj {

using Rational = boost::multiprecision::cpp_rational;

/// The cosets of W that meet E, i.e. pi^W(E).
struct ProjectionImage {
  Subspace direction;
  std::vector<AffinePlane> cosets;  // sorted by representative
  std::uint64_t size = 0;
  /// W is {0} or the whole space.
  bool degenerate = false;
};

/// |E cap (x + W)| for every coset of W, indexed by CosetIndexer label.
struct CosetProfile {
  Subspace direction;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t image_size() const;
  /// Sum of squared coset masses, the pair count inside cosets.
  std::uint64_t sum_of_squares() const;
  /// |E|^2 <= |pi^W(E)| * sum of squares.
  bool cauchy_schwarz_holds() const;
};

ProjectionImage project(const PointSet& E, const Subspace& W);
/// P_V(E): cosets of Per(V) meeting E. Cosets are identified by the dot products
/// of a point with V's basis, then labelled as cosets of Per(V).
ProjectionImage project_onto(const PointSet& E, const Subspace& V);
CosetProfile coset_profile(const PointSet& E, const Subspace& W);

/// All W in G(n, n-m), with coset indexers prepared for repeated sweeps.
class Directions {
 public:
  Directions(const AmbientSpace& space, unsigned m,
             std::uint64_t budget = kDefaultSubspaceBudget);

  const AmbientSpace& space() const noexcept { return space_; }
  /// Codimension of each direction; every image has at most p^m cosets.
  unsigned m() const noexcept { return m_; }
  std::size_t size() const noexcept { return subspaces_.size(); }
  const Subspace& at(std::size_t i) const { return subspaces_.at(i); }
  const CosetIndexer& indexer(std::size_t i) const { return indexers_.at(i); }
  const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }

 private:
  AmbientSpace space_;
  unsigned m_;
  std::vector<Subspace> subspaces_;
  std::vector<CosetIndexer> indexers_;
};

/// |pi^W(E)| for every direction, in enumeration order.
std::vector<std::uint64_t> image_sizes(const PointSet& E, const Directions& dirs);
std::vector<CosetProfile> coset_profiles(const PointSet& E, const Directions& dirs);

/// The Gaussian-coefficient size estimates the exceptional-set proofs rely on:
/// the range condition at (n,m), (n-1,m-1) and (n-1,n-m-1).
bool counting_condition_holds(unsigned n, unsigned m, std::uint64_t p);

enum class CensusKind { small, large, corollary_a, corollary_b, corollary_c };
std::string to_string(CensusKind kind);

struct CensusReport {
  CensusKind kind = CensusKind::small;
  std::uint32_t p = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t cardinality = 0;
  /// Human-readable threshold, e.g. "N=2", "delta=1/2", "p^t/10 (t=0.5)".
  std::string threshold_label;
  /// Directions with |pi^W(E)| <= threshold are exceptional.
  std::uint64_t threshold = 0;
  std::uint64_t directions = 0;
  std::uint64_t observed = 0;
  /// Exact bound when bound_exact; otherwise floor of the real bound, which decides
  /// the same integer comparison.
  Rational bound;
  bool bound_exact = true;
  double bound_value = 0.0;
  bool hypothesis_ok = false;
  std::string hypothesis_note;
  bool satisfied = false;
  std::vector<std::uint64_t> per_direction;

  /// Only reports whose hypotheses hold carry a proven bound.
  bool violated() const { return hypothesis_ok && !satisfied; }
};

/// Directions with |pi^W(E)| <= N against 4 p^{(n-m)m-m} N. Requires N < |E|/2.
CensusReport exceptional_census_small(const PointSet& E, unsigned m, std::uint64_t N,
                                      std::uint64_t budget = kDefaultSubspaceBudget);
/// Directions with |pi^W(E)| <= delta p^m against 2 delta/(1-delta) p^{m(n-m)+m} / |E|.
CensusReport exceptional_census_large(const PointSet& E, unsigned m, const Rational& delta,
                                      std::uint64_t budget = kDefaultSubspaceBudget);
/// The three corollary censuses for |E| ~ p^s; t is only used by case (a).
std::array<CensusReport, 3> corollary_census(const PointSet& E, unsigned m, double s, double t,
                                             std::uint64_t budget = kDefaultSubspaceBudget);

// Variants over precomputed image sizes (sizes[i] belongs to dirs.at(i)).
CensusReport census_small(const Directions& dirs, std::uint64_t cardinality,
                          std::span<const std::uint64_t> sizes, std::uint64_t N);
CensusReport census_large(const Directions& dirs, std::uint64_t cardinality,
                          std::span<const std::uint64_t> sizes, const Rational& delta);
std::array<CensusReport, 3> census_corollary(const Directions& dirs, std::uint64_t cardinality,
                                             std::span<const std::uint64_t> sizes, double s,
                                             double t);

/// floor(p^e / divisor), exact for integral e.
std::uint64_t floor_power_over(std::uint64_t p, double e, std::uint64_t divisor);
/// p^s/2 <= |E| <= 2 p^s.
bool cardinality_in_window(std::uint64_t cardinality, std::uint64_t p, double s);

Rational parse_rational(const std::string& text);

/// CSV: direction,image_size, with the direction as ';'-separated RREF rows.
void write_direction_sizes_csv(std::ostream& out, const Directions& dirs,
                               std::span<const std::uint64_t> sizes);

}  // namespace ffproj
