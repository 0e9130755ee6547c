#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ffproj/core.hpp"

namespace ffproj {

/// Exact subspace count. Values outgrow 64 bits quickly (e.g. {26 13}_2).
using GaussCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultSubspaceBudget = 10'000'000;

/// Gaussian coefficient {n choose m}_p by the product formula; the division is checked to be exact.
GaussCount gaussian_binomial(int n, int m, std::uint64_t p);

/// As gaussian_binomial, but 0 when m < 0 or m > n (the number of such subspaces).
GaussCount subspace_count(int n, int m, std::uint64_t p);

/// p^{m(n-m)} <= {n choose m}_p <= 2 p^{m(n-m)}, compared as exact integers.
bool check_range_condition(int n, int m, std::uint64_t p);

/// Recurrences {n m} = {n-1 m} + p^{n-m}{n-1 m-1}, {n m} = {n-1 m-1} + p^m{n-1 m},
/// and symmetry {n m} = {n n-m}. Requires 1 <= m <= n.
bool verify_pascal_identities(int n, int m, std::uint64_t p);

GaussCount pow_exact(std::uint64_t base, unsigned exp);

/// A linear subspace stored by its reduced-row-echelon basis, which is unique,
/// so equality of Subspace values is equality of subspaces.
class Subspace {
 public:
  static Subspace span(const AmbientSpace& space, std::span<const FpVector> generators);
  static Subspace zero(const AmbientSpace& space);
  static Subspace full(const AmbientSpace& space);

  const AmbientSpace& space() const noexcept { return space_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(pivots_.size()); }
  unsigned codim() const noexcept { return space_.n() - dim(); }

  std::span<const Residue> row(unsigned i) const {
    return {rows_.data() + std::size_t{i} * space_.n(), space_.n()};
  }
  FpVector basis_vector(unsigned i) const;
  std::vector<FpVector> basis() const;
  std::span<const unsigned> pivots() const noexcept { return pivots_; }
  /// Non-pivot columns, increasing.
  std::vector<unsigned> free_columns() const;

  /// The unique element of x + W with zeros at the pivot columns.
  FpVector reduce(const FpVector& x) const;
  bool contains(const FpVector& x) const { return reduce(x).is_zero(); }

  std::uint64_t element_count() const { return space_.pow(dim()); }
  /// Calls fn(PointIndex) for each of the p^dim elements.
  void for_each_element(const std::function<void(PointIndex)>& fn) const;
  std::vector<PointIndex> elements() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.space_ == b.space_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  Subspace(AmbientSpace space, std::vector<Residue> rows, std::vector<unsigned> pivots);
  friend class GrassmannianWalker;

  AmbientSpace space_;
  std::vector<Residue> rows_;  // dim x n, row-major
  std::vector<unsigned> pivots_;
};

/// A translate x + W, with x the canonical representative (zeros at W's pivot columns).
struct AffinePlane {
  Subspace direction;
  FpVector rep;

  unsigned dim() const noexcept { return direction.dim(); }
  bool contains(const FpVector& x) const;

  friend bool operator==(const AffinePlane&, const AffinePlane&) = default;
};

AffinePlane coset_of(const Subspace& W, const FpVector& x);

/// Labels the p^{codim W} cosets of W by integers in [0, p^{codim W}): the label of x
/// is the base-p number formed by the free-column coordinates of W.reduce(x).
class CosetIndexer {
 public:
  explicit CosetIndexer(const Subspace& W);

  std::uint64_t coset_count() const noexcept { return coset_count_; }
  std::uint64_t label(std::span<const Residue> x) const;
  std::uint64_t label(const FpVector& x) const { return label(x.coords()); }
  AffinePlane plane(std::uint64_t label) const;
  const Subspace& direction() const noexcept { return W_; }

 private:
  struct Term {
    unsigned column;
    Residue coeff;
  };
  Subspace W_;
  std::uint32_t p_;
  std::uint64_t coset_count_;
  std::vector<unsigned> free_;
  std::vector<std::vector<Term>> terms_;  // per free column: contributions of pivot columns
};

/// Per(W) = {x : x.w = 0 for all w in W}; computed as the nullspace of W's basis.
Subspace perp(const Subspace& W);

/// Visits G(n, m) in a fixed order: pivot patterns lexicographically, then free entries.
void for_each_subspace(const AmbientSpace& space, unsigned m,
                       const std::function<void(const Subspace&)>& fn,
                       std::uint64_t budget = kDefaultSubspaceBudget);
std::vector<Subspace> enumerate_grassmannian(const AmbientSpace& space, unsigned m,
                                             std::uint64_t budget = kDefaultSubspaceBudget);
std::vector<AffinePlane> enumerate_affine(const AmbientSpace& space, unsigned m,
                                          std::uint64_t budget = kDefaultSubspaceBudget);

/// |{V in G(n,m) : xi in V}| = {n-1 choose m-1}_p.
GaussCount count_subspaces_containing(const AmbientSpace& space, const FpVector& xi, unsigned m);
/// |{V in G(n,m) : xi in Per(V)}| = {n-1 choose m}_p.
GaussCount count_subspaces_with_perp_containing(const AmbientSpace& space, const FpVector& xi,
                                                unsigned m);

struct SubspaceCountCheck {
  GaussCount containing_closed, containing_enumerated;
  GaussCount perp_closed, perp_enumerated;
  bool ok() const {
    return containing_closed == containing_enumerated && perp_closed == perp_enumerated;
  }
};
/// Closed forms next to exhaustive counts over G(n,m).
SubspaceCountCheck verify_subspace_counts(const AmbientSpace& space, const FpVector& xi,
                                          unsigned m,
                                          std::uint64_t budget = kDefaultSubspaceBudget);

// "subspace p=<p> n=<n> m=<m>" followed by the m RREF rows.
void write_subspace(std::ostream& out, const Subspace& W);
Subspace read_subspace(std::istream& in);

}  // namespace ffproj
