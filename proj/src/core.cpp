#include "ffproj/core.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ffproj {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d <= value / d; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw ContractViolation("integer power overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

AmbientSpace::AmbientSpace(std::uint64_t p, unsigned n, std::uint64_t point_budget) {
  if (!is_prime(p)) {
    throw ContractViolation("modulus " + std::to_string(p) + " is not prime");
  }
  if (n == 0) throw ContractViolation("dimension must be at least 1");
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw ContractViolation("modulus too large");
  }
  p_ = static_cast<std::uint32_t>(p);
  n_ = n;
  powers_.reserve(n + 1);
  powers_.push_back(1);
  for (unsigned k = 1; k <= n; ++k) {
    if (powers_.back() > point_budget / p) {
      throw BudgetExceeded("p^n = " + std::to_string(p) + "^" + std::to_string(n) +
                           " exceeds the point budget " + std::to_string(point_budget));
    }
    powers_.push_back(powers_.back() * p);
  }
  point_count_ = powers_.back();
}

bool FpVector::is_zero() const noexcept {
  for (Residue c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

void check_in_space(const AmbientSpace& space, const FpVector& v) {
  if (v.size() != space.n()) {
    throw ContractViolation("vector has " + std::to_string(v.size()) + " coordinates, expected " +
                            std::to_string(space.n()));
  }
  for (Residue c : v.coords()) {
    if (c >= space.p()) {
      throw ContractViolation("coordinate " + std::to_string(c) + " out of range for p=" +
                              std::to_string(space.p()));
    }
  }
}

PointIndex encode(const AmbientSpace& space, const FpVector& v) {
  check_in_space(space, v);
  PointIndex idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * space.p() + v[i];
  return idx;
}

void decode_into(const AmbientSpace& space, PointIndex idx, std::span<Residue> out) {
  const std::uint32_t p = space.p();
  for (unsigned i = 0; i < space.n(); ++i) {
    out[i] = static_cast<Residue>(idx % p);
    idx /= p;
  }
}

FpVector decode(const AmbientSpace& space, PointIndex idx) {
  if (idx >= space.point_count()) throw ContractViolation("point index out of range");
  std::vector<Residue> coords(space.n());
  decode_into(space, idx, coords);
  return FpVector(std::move(coords));
}

Residue dot(const AmbientSpace& space, const FpVector& u, const FpVector& v) {
  check_in_space(space, u);
  check_in_space(space, v);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    acc = (acc + std::uint64_t{u[i]} * v[i]) % space.p();
  }
  return static_cast<Residue>(acc);
}

FpVector add(const AmbientSpace& space, const FpVector& u, const FpVector& v) {
  check_in_space(space, u);
  check_in_space(space, v);
  FpVector out = u;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (u[i] + v[i]) % space.p();
  return out;
}

FpVector sub(const AmbientSpace& space, const FpVector& u, const FpVector& v) {
  check_in_space(space, u);
  check_in_space(space, v);
  FpVector out = u;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (u[i] + space.p() - v[i]) % space.p();
  return out;
}

FpVector scale(const AmbientSpace& space, Residue c, const FpVector& v) {
  check_in_space(space, v);
  FpVector out = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<Residue>(std::uint64_t{c % space.p()} * v[i] % space.p());
  }
  return out;
}

Residue mod_inverse(Residue a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  if (new_r == 0) throw ContractViolation("zero has no inverse");
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<Residue>(t);
}

PointSet::PointSet(AmbientSpace space)
    : space_(std::move(space)), words_((space_.point_count() + 63) / 64, 0) {}

bool PointSet::contains(PointIndex idx) const {
  if (idx >= space_.point_count()) throw ContractViolation("point index out of range");
  return (words_[idx / 64] >> (idx % 64)) & 1U;
}

std::vector<PointIndex> PointSet::indices() const {
  std::vector<PointIndex> out;
  out.reserve(cardinality_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<unsigned>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<FpVector> PointSet::points() const {
  std::vector<FpVector> out;
  out.reserve(cardinality_);
  for (PointIndex idx : indices()) out.push_back(decode(space_, idx));
  return out;
}

PointSet PointSet::full(const AmbientSpace& space) {
  PointSetBuilder builder(space);
  for (PointIndex idx = 0; idx < space.point_count(); ++idx) builder.insert(idx);
  return std::move(builder).build();
}

PointSet PointSet::from_mask(const AmbientSpace& space, std::uint64_t mask) {
  if (space.point_count() > 64) throw ContractViolation("from_mask needs p^n <= 64");
  if (space.point_count() < 64 && (mask >> space.point_count()) != 0) {
    throw ContractViolation("mask has bits beyond p^n");
  }
  PointSet set(space);
  set.words_[0] = mask;
  set.cardinality_ = static_cast<std::uint64_t>(std::popcount(mask));
  return set;
}

PointSetBuilder::PointSetBuilder(AmbientSpace space) : set_(std::move(space)) {}

PointSetBuilder& PointSetBuilder::insert(const FpVector& v) {
  return insert(encode(set_.space_, v));
}

PointSetBuilder& PointSetBuilder::insert(PointIndex idx) {
  if (idx >= set_.space_.point_count()) throw ContractViolation("point index out of range");
  set_.words_[idx / 64] |= std::uint64_t{1} << (idx % 64);
  return *this;
}

PointSet PointSetBuilder::build() && {
  std::uint64_t count = 0;
  for (std::uint64_t w : set_.words_) count += static_cast<std::uint64_t>(std::popcount(w));
  set_.cardinality_ = count;
  return std::move(set_);
}

PointSet PointSetBuilder::build() const& {
  PointSetBuilder copy = *this;
  return std::move(copy).build();
}

PointSet build_point_set(const AmbientSpace& space, std::span<const FpVector> points) {
  PointSetBuilder builder(space);
  for (const FpVector& v : points) builder.insert(v);
  return std::move(builder).build();
}

std::string to_string(const FpVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

void write_point_set(std::ostream& out, const PointSet& set) {
  const AmbientSpace& space = set.space();
  out << "ffpointset 1 p=" << space.p() << " n=" << space.n() << '\n';
  std::vector<Residue> coords(space.n());
  for (PointIndex idx : set.indices()) {
    decode_into(space, idx, coords);
    for (unsigned i = 0; i < space.n(); ++i) {
      if (i) out << ',';
      out << coords[i];
    }
    out << '\n';
  }
}

namespace {

std::uint64_t parse_uint(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw FormatError("malformed " + what + ": '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_keyed(const std::string& token, std::string_view key) {
  if (token.rfind(key, 0) != 0) {
    throw FormatError("expected '" + std::string(key) + "<value>' in header, got '" + token + "'");
  }
  return parse_uint(std::string_view(token).substr(key.size()), std::string(key));
}

}  // namespace

PointSet read_point_set(std::istream& in, std::uint64_t point_budget) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty point-set file");
  std::istringstream header(line);
  std::string magic, version, ptok, ntok, extra;
  header >> magic >> version >> ptok >> ntok;
  if (magic != "ffpointset" || version != "1") {
    throw FormatError("missing 'ffpointset 1' header");
  }
  if (header >> extra) throw FormatError("trailing tokens in header");
  const std::uint64_t p = parse_keyed(ptok, "p=");
  const std::uint64_t n = parse_keyed(ntok, "n=");
  if (n == 0 || n > 64) throw FormatError("unsupported dimension n=" + std::to_string(n));
  AmbientSpace space = [&] {
    try {
      return AmbientSpace(p, static_cast<unsigned>(n), point_budget);
    } catch (const ContractViolation& e) {
      throw FormatError(e.what());
    }
  }();

  PointSetBuilder builder(space);
  std::size_t line_no = 1;
  std::vector<Residue> coords;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    coords.clear();
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const std::uint64_t c =
          parse_uint(rest.substr(0, comma), "coordinate on line " + std::to_string(line_no));
      if (c >= space.p()) {
        throw FormatError("coordinate out of range on line " + std::to_string(line_no));
      }
      coords.push_back(static_cast<Residue>(c));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (coords.size() != space.n()) {
      throw FormatError("line " + std::to_string(line_no) + " has " + std::to_string(coords.size()) +
                        " coordinates, expected " + std::to_string(space.n()));
    }
    builder.insert(FpVector(coords));
  }
  return std::move(builder).build();
}

PointSet load_point_set(const std::string& path, std::uint64_t point_budget) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open point-set file '" + path + "'");
  return read_point_set(in, point_budget);
}

}  // namespace ffproj
