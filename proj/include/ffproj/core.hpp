#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffproj {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed a configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Residue = std::uint32_t;
using PointIndex = std::uint64_t;

inline constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 26;

bool is_prime(std::uint64_t value);

/// Exact `base^exp`, throwing ContractViolation on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// F_p^n together with the little-endian base-p point-index codec.
class AmbientSpace {
 public:
  AmbientSpace(std::uint64_t p, unsigned n, std::uint64_t point_budget = kDefaultPointBudget);

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t point_count() const noexcept { return point_count_; }

  /// p^k for 0 <= k <= n (table lookup).
  std::uint64_t pow(unsigned k) const { return powers_.at(k); }

  friend bool operator==(const AmbientSpace& a, const AmbientSpace& b) noexcept {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t p_;
  unsigned n_;
  std::uint64_t point_count_;
  std::vector<std::uint64_t> powers_;
};

/// A vector of F_p^n; coordinates are kept reduced into [0, p).
class FpVector {
 public:
  FpVector() = default;
  explicit FpVector(std::vector<Residue> coords) : coords_(std::move(coords)) {}
  static FpVector zero(unsigned n) { return FpVector(std::vector<Residue>(n, 0)); }

  std::size_t size() const noexcept { return coords_.size(); }
  Residue operator[](std::size_t i) const { return coords_[i]; }
  Residue& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Residue> coords() const noexcept { return coords_; }
  bool is_zero() const noexcept;

  friend bool operator==(const FpVector&, const FpVector&) = default;
  friend auto operator<=>(const FpVector&, const FpVector&) = default;

 private:
  std::vector<Residue> coords_;
};

/// Throws ContractViolation unless `v` lives in `space`.
void check_in_space(const AmbientSpace& space, const FpVector& v);

PointIndex encode(const AmbientSpace& space, const FpVector& v);
FpVector decode(const AmbientSpace& space, PointIndex idx);
/// Writes the coordinates of `idx` into `out` (size n) without allocating.
void decode_into(const AmbientSpace& space, PointIndex idx, std::span<Residue> out);

Residue dot(const AmbientSpace& space, const FpVector& u, const FpVector& v);
FpVector add(const AmbientSpace& space, const FpVector& u, const FpVector& v);
FpVector sub(const AmbientSpace& space, const FpVector& u, const FpVector& v);
FpVector scale(const AmbientSpace& space, Residue c, const FpVector& v);

Residue mod_inverse(Residue a, std::uint32_t p);

/// Dense subset of F_p^n. Immutable; assemble with PointSetBuilder.
class PointSet {
 public:
  explicit PointSet(AmbientSpace space);  // empty set

  const AmbientSpace& space() const noexcept { return space_; }
  std::uint64_t cardinality() const noexcept { return cardinality_; }
  bool empty() const noexcept { return cardinality_ == 0; }
  bool contains(PointIndex idx) const;
  bool contains(const FpVector& v) const { return contains(encode(space_, v)); }

  /// Member indices in increasing order.
  std::vector<PointIndex> indices() const;
  std::vector<FpVector> points() const;

  static PointSet full(const AmbientSpace& space);
  /// Bit i of `mask` selects point index i (requires p^n <= 64).
  static PointSet from_mask(const AmbientSpace& space, std::uint64_t mask);

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.space_ == b.space_ && a.words_ == b.words_;
  }

 private:
  friend class PointSetBuilder;
  AmbientSpace space_;
  std::vector<std::uint64_t> words_;
  std::uint64_t cardinality_ = 0;
};

class PointSetBuilder {
 public:
  explicit PointSetBuilder(AmbientSpace space);

  PointSetBuilder& insert(const FpVector& v);
  PointSetBuilder& insert(PointIndex idx);
  PointSet build() &&;
  PointSet build() const&;

 private:
  PointSet set_;
};

PointSet build_point_set(const AmbientSpace& space, std::span<const FpVector> points);

// "ffpointset v1" text format.
void write_point_set(std::ostream& out, const PointSet& set);
PointSet read_point_set(std::istream& in, std::uint64_t point_budget = kDefaultPointBudget);
PointSet load_point_set(const std::string& path, std::uint64_t point_budget = kDefaultPointBudget);

std::string to_string(const FpVector& v);

}  // namespace ffproj
