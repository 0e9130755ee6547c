#include "ffproj/projections.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "ffproj/parallel.hpp"

namespace ffproj {

namespace {

bool is_integral(double e) { return std::abs(e - std::round(e)) < 1e-12; }

std::vector<Residue> decode_all(const PointSet& E) {
  const AmbientSpace& space = E.space();
  std::vector<Residue> coords(E.cardinality() * space.n());
  std::size_t k = 0;
  for (PointIndex idx : E.indices()) {
    decode_into(space, idx, std::span<Residue>(coords.data() + k * space.n(), space.n()));
    ++k;
  }
  return coords;
}

void sort_by_rep(std::vector<AffinePlane>& planes) {
  std::sort(planes.begin(), planes.end(),
            [](const AffinePlane& a, const AffinePlane& b) { return a.rep < b.rep; });
}

}  // namespace

std::uint64_t CosetProfile::image_size() const {
  return static_cast<std::uint64_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c != 0; }));
}

std::uint64_t CosetProfile::sum_of_squares() const {
  std::uint64_t acc = 0;
  for (std::uint64_t c : counts) acc += c * c;
  return acc;
}

bool CosetProfile::cauchy_schwarz_holds() const {
  using u128 = unsigned __int128;
  return u128{total} * total <= u128{image_size()} * sum_of_squares();
}

ProjectionImage project(const PointSet& E, const Subspace& W) {
  if (!(E.space() == W.space())) throw ContractViolation("point set and subspace differ in space");
  const CosetIndexer indexer(W);
  std::vector<char> hit(indexer.coset_count(), 0);
  std::vector<Residue> coords(E.space().n());
  for (PointIndex idx : E.indices()) {
    decode_into(E.space(), idx, coords);
    hit[indexer.label(std::span<const Residue>(coords))] = 1;
  }
  ProjectionImage image{W, {}, 0, W.dim() == 0 || W.codim() == 0};
  for (std::uint64_t label = 0; label < hit.size(); ++label) {
    if (hit[label]) image.cosets.push_back(indexer.plane(label));
  }
  sort_by_rep(image.cosets);
  image.size = image.cosets.size();
  return image;
}

ProjectionImage project_onto(const PointSet& E, const Subspace& V) {
  if (!(E.space() == V.space())) throw ContractViolation("point set and subspace differ in space");
  const AmbientSpace& space = E.space();
  const std::vector<FpVector> basis = V.basis();
  std::map<std::uint64_t, FpVector> by_signature;
  for (const FpVector& x : E.points()) {
    std::uint64_t signature = 0;
    for (const FpVector& v : basis) signature = signature * space.p() + dot(space, x, v);
    by_signature.emplace(signature, x);
  }
  const Subspace complement = perp(V);
  ProjectionImage image{complement, {}, 0, V.dim() == 0 || V.codim() == 0};
  for (const auto& [signature, x] : by_signature) {
    image.cosets.push_back(coset_of(complement, x));
  }
  sort_by_rep(image.cosets);
  image.size = image.cosets.size();
  return image;
}

CosetProfile coset_profile(const PointSet& E, const Subspace& W) {
  if (!(E.space() == W.space())) throw ContractViolation("point set and subspace differ in space");
  const CosetIndexer indexer(W);
  CosetProfile profile{W, std::vector<std::uint64_t>(indexer.coset_count(), 0), E.cardinality()};
  std::vector<Residue> coords(E.space().n());
  for (PointIndex idx : E.indices()) {
    decode_into(E.space(), idx, coords);
    ++profile.counts[indexer.label(std::span<const Residue>(coords))];
  }
  return profile;
}

Directions::Directions(const AmbientSpace& space, unsigned m, std::uint64_t budget)
    : space_(space), m_(m) {
  if (m > space.n()) throw ContractViolation("codimension exceeds n");
  subspaces_ = enumerate_grassmannian(space, space.n() - m, budget);
  indexers_.reserve(subspaces_.size());
  for (const Subspace& W : subspaces_) indexers_.emplace_back(W);
}

std::vector<std::uint64_t> image_sizes(const PointSet& E, const Directions& dirs) {
  if (!(E.space() == dirs.space())) throw ContractViolation("point set and directions differ");
  const unsigned n = E.space().n();
  const std::vector<Residue> coords = decode_all(E);
  const std::size_t count = E.cardinality();
  std::vector<std::uint64_t> sizes(dirs.size(), 0);
  parallel_for(dirs.size(), [&](std::size_t i) {
    const CosetIndexer& indexer = dirs.indexer(i);
    std::vector<char> hit(indexer.coset_count(), 0);
    std::uint64_t size = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const auto label = indexer.label(std::span<const Residue>(coords.data() + k * n, n));
      if (!hit[label]) {
        hit[label] = 1;
        ++size;
      }
    }
    sizes[i] = size;
  });
  return sizes;
}

std::vector<CosetProfile> coset_profiles(const PointSet& E, const Directions& dirs) {
  if (!(E.space() == dirs.space())) throw ContractViolation("point set and directions differ");
  const unsigned n = E.space().n();
  const std::vector<Residue> coords = decode_all(E);
  std::vector<CosetProfile> out;
  out.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    out.push_back({dirs.at(i), std::vector<std::uint64_t>(dirs.indexer(i).coset_count(), 0),
                   E.cardinality()});
  }
  parallel_for(dirs.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < E.cardinality(); ++k) {
      ++out[i].counts[dirs.indexer(i).label(std::span<const Residue>(coords.data() + k * n, n))];
    }
  });
  return out;
}

bool counting_condition_holds(unsigned n, unsigned m, std::uint64_t p) {
  if (m > n) return false;
  const int ni = static_cast<int>(n);
  const int mi = static_cast<int>(m);
  auto holds = [&](int a, int b) { return b < 0 || b > a || check_range_condition(a, b, p); };
  return holds(ni, mi) && holds(ni - 1, mi - 1) && holds(ni - 1, ni - mi - 1);
}

std::string to_string(CensusKind kind) {
  switch (kind) {
    case CensusKind::small: return "small";
    case CensusKind::large: return "large";
    case CensusKind::corollary_a: return "corollary_a";
    case CensusKind::corollary_b: return "corollary_b";
    case CensusKind::corollary_c: return "corollary_c";
  }
  return "unknown";
}

std::uint64_t floor_power_over(std::uint64_t p, double e, std::uint64_t divisor) {
  if (is_integral(e)) {
    const long long k = std::llround(e);
    if (k < 0) return 0;
    return (pow_exact(p, static_cast<unsigned>(k)) / divisor).convert_to<std::uint64_t>();
  }
  return static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(p), static_cast<long double>(e)) / divisor));
}

bool cardinality_in_window(std::uint64_t cardinality, std::uint64_t p, double s) {
  if (is_integral(s) && s >= 0) {
    const GaussCount ps = pow_exact(p, static_cast<unsigned>(std::llround(s)));
    return ps <= 2 * GaussCount(cardinality) && GaussCount(cardinality) <= 2 * ps;
  }
  const long double ps = std::pow(static_cast<long double>(p), static_cast<long double>(s));
  const long double c = static_cast<long double>(cardinality);
  return ps / 2 <= c && c <= 2 * ps;
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const GaussCount num(text.substr(0, slash));
      const GaussCount den(text.substr(slash + 1));
      if (den == 0) throw ContractViolation("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    const auto dot_pos = text.find('.');
    if (dot_pos == std::string::npos) return Rational(GaussCount(text));
    const std::string whole = text.substr(0, dot_pos);
    const std::string frac = text.substr(dot_pos + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos || text.find('-') != std::string::npos) {
      throw ContractViolation("cannot parse rational '" + text + "'");
    }
    const GaussCount den = pow_exact(10, static_cast<unsigned>(frac.size()));
    const GaussCount num = GaussCount(whole.empty() ? "0" : whole) * den +
                           (frac.empty() ? GaussCount(0) : GaussCount(frac));
    return Rational(num, den);
  } catch (const ContractViolation&) {
    throw;
  } catch (const std::exception&) {
    throw ContractViolation("cannot parse rational '" + text + "'");
  }
}

namespace {

struct Bound {
  Rational value;
  bool exact;
  double approx;
};

// coefficient * p^exponent; exact for integral exponents, else floored.
Bound scaled_power(const Rational& coefficient, std::uint64_t p, double exponent) {
  const double approx = coefficient.convert_to<double>() * std::pow(static_cast<double>(p), exponent);
  if (is_integral(exponent)) {
    const long long k = std::llround(exponent);
    const GaussCount pk = pow_exact(p, static_cast<unsigned>(std::llabs(k)));
    Rational value = k >= 0 ? coefficient * Rational(pk) : coefficient / Rational(pk);
    return {value, true, approx};
  }
  const long double real = static_cast<long double>(coefficient.convert_to<double>()) *
                           std::pow(static_cast<long double>(p), static_cast<long double>(exponent));
  return {Rational(GaussCount(static_cast<unsigned long long>(std::floor(real)))), false, approx};
}

CensusReport base_report(CensusKind kind, const Directions& dirs, std::uint64_t cardinality,
                         std::span<const std::uint64_t> sizes, std::uint64_t threshold) {
  if (sizes.size() != dirs.size()) throw ContractViolation("one image size per direction expected");
  CensusReport r;
  r.kind = kind;
  r.p = dirs.space().p();
  r.n = dirs.space().n();
  r.m = dirs.m();
  r.cardinality = cardinality;
  r.threshold = threshold;
  r.directions = dirs.size();
  r.observed = static_cast<std::uint64_t>(
      std::count_if(sizes.begin(), sizes.end(), [&](std::uint64_t s) { return s <= threshold; }));
  r.per_direction.assign(sizes.begin(), sizes.end());
  return r;
}

void finish(CensusReport& r, const Bound& bound) {
  r.bound = bound.value;
  r.bound_exact = bound.exact;
  r.bound_value = bound.approx;
  r.satisfied = Rational(r.observed) <= r.bound;
}

std::string notes(std::initializer_list<std::pair<bool, const char*>> checks) {
  std::string out;
  for (const auto& [ok, message] : checks) {
    if (ok) continue;
    if (!out.empty()) out += "; ";
    out += message;
  }
  return out;
}

std::string format_real(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CensusReport census_small(const Directions& dirs, std::uint64_t cardinality,
                          std::span<const std::uint64_t> sizes, std::uint64_t N) {
  CensusReport r = base_report(CensusKind::small, dirs, cardinality, sizes, N);
  r.threshold_label = "N=" + std::to_string(N);
  const bool proper = r.m >= 1 && r.m + 1 <= r.n;
  const bool below_half = 2 * N < cardinality;
  const bool counting = counting_condition_holds(r.n, r.m, r.p);
  r.hypothesis_ok = proper && below_half && counting;
  r.hypothesis_note = notes({{proper, "m must satisfy 1 <= m <= n-1"},
                             {below_half, "N must be below |E|/2"},
                             {counting, "Gaussian coefficient range condition fails"}});
  const double exponent = static_cast<double>(static_cast<int>((r.n - r.m) * r.m) - static_cast<int>(r.m));
  finish(r, scaled_power(Rational(4 * GaussCount(N)), r.p, exponent));
  return r;
}

CensusReport census_large(const Directions& dirs, std::uint64_t cardinality,
                          std::span<const std::uint64_t> sizes, const Rational& delta) {
  const GaussCount pm = pow_exact(dirs.space().p(), dirs.m());
  const Rational scaled = delta * Rational(pm);
  const std::uint64_t threshold =
      delta <= 0 ? 0
                 : (boost::multiprecision::numerator(scaled) /
                    boost::multiprecision::denominator(scaled))
                       .convert_to<std::uint64_t>();
  CensusReport r = base_report(CensusKind::large, dirs, cardinality, sizes, threshold);
  r.threshold_label = "delta=" + delta.str();
  const bool proper = r.m >= 1 && r.m + 1 <= r.n;
  const bool in_range = delta > 0 && delta < 1;
  const bool nonempty = cardinality > 0;
  const bool counting = counting_condition_holds(r.n, r.m, r.p);
  r.hypothesis_ok = proper && in_range && nonempty && counting;
  r.hypothesis_note = notes({{proper, "m must satisfy 1 <= m <= n-1"},
                             {in_range, "delta must lie in (0,1)"},
                             {nonempty, "E must be nonempty"},
                             {counting, "Gaussian coefficient range condition fails"}});
  if (in_range && nonempty) {
    const Rational coefficient = 2 * delta / (1 - delta) / Rational(GaussCount(cardinality));
    finish(r, scaled_power(coefficient, r.p, static_cast<double>(r.m * (r.n - r.m) + r.m)));
  } else {
    finish(r, {Rational(0), true, 0.0});
  }
  return r;
}

std::array<CensusReport, 3> census_corollary(const Directions& dirs, std::uint64_t cardinality,
                                             std::span<const std::uint64_t> sizes, double s,
                                             double t) {
  const std::uint32_t p = dirs.space().p();
  const unsigned n = dirs.space().n();
  const unsigned m = dirs.m();
  const double md = static_cast<double>(m);
  const double base = static_cast<double>(m * (n - m));
  const bool proper = m >= 1 && m + 1 <= n;
  const bool window = cardinality_in_window(cardinality, p, s);
  const bool counting = counting_condition_holds(n, m, p);
  const char* window_msg = "|E| outside [p^s/2, 2p^s]";
  const char* proper_msg = "m must satisfy 1 <= m <= n-1";
  const char* counting_msg = "Gaussian coefficient range condition fails";

  CensusReport a = base_report(CensusKind::corollary_a, dirs, cardinality, sizes,
                               floor_power_over(p, t, 10));
  a.threshold_label = "p^t/10 (s=" + format_real(s) + ", t=" + format_real(t) + ")";
  const bool a_regime = s <= md && t > 0 && t <= s;
  a.hypothesis_ok = proper && window && counting && a_regime;
  a.hypothesis_note = notes({{proper, proper_msg}, {window, window_msg}, {counting, counting_msg},
                             {a_regime, "case (a) needs s <= m and 0 < t <= s"}});
  finish(a, scaled_power(Rational(1, 2), p, base - (md - t)));

  CensusReport b = base_report(CensusKind::corollary_b, dirs, cardinality, sizes,
                               floor_power_over(p, md, 10));
  b.threshold_label = "p^m/10 (s=" + format_real(s) + ")";
  const bool b_regime = s > md;
  b.hypothesis_ok = proper && window && counting && b_regime;
  b.hypothesis_note = notes({{proper, proper_msg}, {window, window_msg}, {counting, counting_msg},
                             {b_regime, "case (b) needs s > m"}});
  finish(b, scaled_power(Rational(1, 2), p, base - (s - md)));

  CensusReport c = base_report(CensusKind::corollary_c, dirs, cardinality, sizes,
                               floor_power_over(p, md, 1) - 1);
  c.threshold_label = "image != p^m (s=" + format_real(s) + ")";
  const bool c_regime = s > 2 * md;
  c.hypothesis_ok = proper && window && counting && c_regime;
  c.hypothesis_note = notes({{proper, proper_msg}, {window, window_msg}, {counting, counting_msg},
                             {c_regime, "case (c) needs s > 2m"}});
  finish(c, scaled_power(Rational(4), p, base - (s - 2 * md)));

  return {a, b, c};
}

CensusReport exceptional_census_small(const PointSet& E, unsigned m, std::uint64_t N,
                                      std::uint64_t budget) {
  const Directions dirs(E.space(), m, budget);
  const auto sizes = image_sizes(E, dirs);
  return census_small(dirs, E.cardinality(), sizes, N);
}

CensusReport exceptional_census_large(const PointSet& E, unsigned m, const Rational& delta,
                                      std::uint64_t budget) {
  const Directions dirs(E.space(), m, budget);
  const auto sizes = image_sizes(E, dirs);
  return census_large(dirs, E.cardinality(), sizes, delta);
}

std::array<CensusReport, 3> corollary_census(const PointSet& E, unsigned m, double s, double t,
                                             std::uint64_t budget) {
  const Directions dirs(E.space(), m, budget);
  const auto sizes = image_sizes(E, dirs);
  return census_corollary(dirs, E.cardinality(), sizes, s, t);
}

void write_direction_sizes_csv(std::ostream& out, const Directions& dirs,
                               std::span<const std::uint64_t> sizes) {
  out << "direction,image_size\n";
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Subspace& W = dirs.at(i);
    for (unsigned r = 0; r < W.dim(); ++r) {
      if (r) out << ';';
      const auto row = W.row(r);
      for (unsigned k = 0; k < row.size(); ++k) {
        if (k) out << ' ';
        out << row[k];
      }
    }
    out << ',' << sizes[i] << '\n';
  }
}

}  // namespace ffproj
