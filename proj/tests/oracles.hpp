#pragma once

// Brute-force reference computations. Nothing here goes through RREF, coset
// indexers or the axis-by-axis transform.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "ffproj/core.hpp"

namespace oracle {

using ffproj::AmbientSpace;
using ffproj::PointIndex;
using ffproj::PointSet;

/// A subspace as the sorted list of its point indices.
using PointList = std::vector<PointIndex>;

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::vector<std::uint32_t> coords(const AmbientSpace& s, PointIndex idx) {
  std::vector<std::uint32_t> c(s.n());
  for (unsigned i = 0; i < s.n(); ++i) {
    c[i] = static_cast<std::uint32_t>(idx % s.p());
    idx /= s.p();
  }
  return c;
}

inline PointIndex index_of(const AmbientSpace& s, const std::vector<std::uint32_t>& c) {
  PointIndex idx = 0;
  for (unsigned i = s.n(); i-- > 0;) idx = idx * s.p() + c[i];
  return idx;
}

inline PointIndex add(const AmbientSpace& s, PointIndex a, PointIndex b) {
  auto x = coords(s, a), y = coords(s, b);
  for (unsigned i = 0; i < s.n(); ++i) x[i] = (x[i] + y[i]) % s.p();
  return index_of(s, x);
}

inline std::uint64_t dot(const AmbientSpace& s, PointIndex a, PointIndex b) {
  auto x = coords(s, a), y = coords(s, b);
  std::uint64_t d = 0;
  for (unsigned i = 0; i < s.n(); ++i) d += std::uint64_t{x[i]} * y[i];
  return d % s.p();
}

/// Every linear combination of the generators.
inline PointList span(const AmbientSpace& s, const std::vector<PointIndex>& gens) {
  const std::uint64_t combos = ipow(s.p(), static_cast<unsigned>(gens.size()));
  std::set<PointIndex> pts;
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::vector<std::uint32_t> acc(s.n(), 0);
    std::uint64_t rest = c;
    for (PointIndex g : gens) {
      const auto coeff = static_cast<std::uint32_t>(rest % s.p());
      rest /= s.p();
      const auto gc = coords(s, g);
      for (unsigned i = 0; i < s.n(); ++i) acc[i] = (acc[i] + coeff * gc[i]) % s.p();
    }
    pts.insert(index_of(s, acc));
  }
  return {pts.begin(), pts.end()};
}

/// G(n,m) by spanning every increasing m-tuple of points and keeping spans of size p^m.
inline std::set<PointList> subspaces(const AmbientSpace& s, unsigned m) {
  std::set<PointList> out;
  const std::uint64_t target = ipow(s.p(), m);
  std::vector<PointIndex> pick(m);
  const auto rec = [&](auto&& self, unsigned depth, PointIndex from) -> void {
    if (depth == m) {
      PointList sp = span(s, pick);
      if (sp.size() == target) out.insert(std::move(sp));
      return;
    }
    for (PointIndex i = from; i < s.point_count(); ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  rec(rec, 0, 1);
  if (m == 0) out = {PointList{0}};
  return out;
}

/// All translates of every subspace in G(n,m).
inline std::set<PointList> affine_planes(const AmbientSpace& s, unsigned m) {
  std::set<PointList> out;
  for (const PointList& W : subspaces(s, m)) {
    for (PointIndex x = 0; x < s.point_count(); ++x) {
      PointList plane;
      for (PointIndex w : W) plane.push_back(add(s, x, w));
      std::sort(plane.begin(), plane.end());
      out.insert(std::move(plane));
    }
  }
  return out;
}

/// {y : y.w = 0 for all w in W}
inline PointList perp(const AmbientSpace& s, const PointList& W) {
  PointList out;
  for (PointIndex y = 0; y < s.point_count(); ++y) {
    if (std::all_of(W.begin(), W.end(), [&](PointIndex w) { return dot(s, y, w) == 0; })) {
      out.push_back(y);
    }
  }
  return out;
}

/// Number of distinct translates x + W with x in E.
inline std::uint64_t image_size(const PointSet& E, const PointList& W) {
  const AmbientSpace& s = E.space();
  std::set<PointIndex> labels;
  for (PointIndex x : E.indices()) {
    PointIndex lo = s.point_count();
    for (PointIndex w : W) lo = std::min(lo, add(s, x, w));
    labels.insert(lo);
  }
  return labels.size();
}

inline std::uint64_t intersection(const PointSet& E, const PointList& plane) {
  std::uint64_t c = 0;
  for (PointIndex x : plane) c += E.contains(x);
  return c;
}

/// Sum over all planes of dimension m of |E cap plane|^2.
inline std::uint64_t plane_energy(const PointSet& E, unsigned m) {
  std::uint64_t total = 0;
  for (const PointList& plane : affine_planes(E.space(), m)) {
    const std::uint64_t k = intersection(E, plane);
    total += k * k;
  }
  return total;
}

/// Product formula in 128-bit arithmetic; each partial quotient is itself a Gaussian binomial.
inline unsigned __int128 gaussian(unsigned n, unsigned m, std::uint64_t p) {
  if (m > n) return 0;
  unsigned __int128 r = 1;
  for (unsigned k = 1; k <= m; ++k) r = r * (ipow(p, n - k + 1) - 1) / (ipow(p, k) - 1);
  return r;
}

/// Direct double sum for every frequency.
inline std::vector<std::complex<double>> dft(const PointSet& E) {
  const AmbientSpace& s = E.space();
  std::vector<std::complex<double>> out(s.point_count());
  const auto pts = E.indices();
  for (PointIndex xi = 0; xi < s.point_count(); ++xi) {
    std::complex<double> acc = 0;
    for (PointIndex x : pts) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(dot(s, x, xi)) / s.p();
      acc += std::polar(1.0, angle);
    }
    out[xi] = acc;
  }
  return out;
}

}  // namespace oracle
