#include "ffproj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "ffproj/energy.hpp"
#include "ffproj/fourier.hpp"
#include "ffproj/projections.hpp"
#include "ffproj/random_sets.hpp"

namespace ffproj {

namespace {

class Tally {
 public:
  CheckResult& operator[](const std::string& name) {
    auto [it, inserted] = index_.emplace(name, results_.size());
    if (inserted) results_.push_back(CheckResult{name, true, 0, {}});
    return results_[it->second];
  }

  void record(const std::string& name, bool ok, const std::string& witness) {
    CheckResult& r = (*this)[name];
    ++r.instances;
    if (!ok && r.passed) {
      r.passed = false;
      r.witness = witness;
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<CheckResult> results_;
};

std::string where(const AmbientSpace& space) {
  return "p=" + std::to_string(space.p()) + " n=" + std::to_string(space.n());
}

std::string set_label(const PointSet& E) {
  std::ostringstream os;
  os << "E={";
  bool first = true;
  for (const FpVector& x : E.points()) {
    if (!first) os << ' ';
    os << to_string(x);
    first = false;
  }
  os << '}';
  return os.str();
}

std::string subspace_label(const Subspace& W) {
  std::ostringstream os;
  os << "span{";
  for (unsigned i = 0; i < W.dim(); ++i) {
    if (i) os << ' ';
    os << to_string(W.basis_vector(i));
  }
  os << '}';
  return os.str();
}

void check_subspaces(const AmbientSpace& space, const VerifyOptions& opt, Tally& tally) {
  const std::uint32_t p = space.p();
  const unsigned n = space.n();
  const int ni = static_cast<int>(n);
  for (unsigned m = 0; m <= n; ++m) {
    const std::string at = where(space) + " m=" + std::to_string(m);
    const std::vector<Subspace> grass = enumerate_grassmannian(space, m, opt.budget);
    GaussCount closed = gaussian_binomial(ni, static_cast<int>(m), p);
    if (opt.inject_gaussian_fault) closed += 1;
    const std::set<Subspace> distinct(grass.begin(), grass.end());
    tally.record("gaussian_binomial_vs_enumeration",
                 closed == grass.size() && distinct.size() == grass.size(),
                 at + ": enumerated " + std::to_string(grass.size()) + ", closed form " + closed.str());

    if (m >= 1) {
      tally.record("pascal_identities", verify_pascal_identities(ni, static_cast<int>(m), p), at);
    }

    const GaussCount planes = closed * space.pow(n - m);
    const auto affine = enumerate_affine(space, m, opt.budget);
    tally.record("affine_plane_count", planes == affine.size(),
                 at + ": enumerated " + std::to_string(affine.size()) + ", expected " + planes.str());

    std::set<Subspace> images;
    for (const Subspace& W : grass) {
      const Subspace P = perp(W);
      bool orthogonal = P.dim() == n - m;
      for (unsigned i = 0; i < W.dim() && orthogonal; ++i) {
        for (unsigned j = 0; j < P.dim() && orthogonal; ++j) {
          orthogonal = dot(space, W.basis_vector(i), P.basis_vector(j)) == 0;
        }
      }
      tally.record("perp_rank_nullity", orthogonal, at + " W=" + subspace_label(W));
      tally.record("perp_involution", perp(P) == W, at + " W=" + subspace_label(W));
      images.insert(P);
    }
    tally.record("perp_bijection", images.size() == grass.size(), at);

    for (PointIndex idx = 1; idx < space.point_count(); ++idx) {
      const FpVector xi = decode(space, idx);
      const SubspaceCountCheck c = verify_subspace_counts(space, xi, m, opt.budget);
      tally.record("subspace_counts", c.ok(),
                   at + " xi=" + to_string(xi) + ": containing " + c.containing_enumerated.str() +
                       " vs " + c.containing_closed.str() + ", perp " + c.perp_enumerated.str() +
                       " vs " + c.perp_closed.str());
    }

    for (const Subspace& V : grass) {
      const double scale = static_cast<double>(space.pow(n - m));
      for (PointIndex idx = 0; idx < space.point_count(); ++idx) {
        const FpVector x = decode(space, idx);
        const Complex sum = character_sum(V, x);
        const bool inside = V.contains(x);
        const double expected = inside ? scale : 0.0;
        const bool ok = std::abs(sum - Complex(expected, 0)) <= kSpectralTolerance * scale;
        tally.record("character_sum", ok, at + " V=" + subspace_label(V) + " x=" + to_string(x));
      }
    }
  }
}

void check_sets(const AmbientSpace& space, const VerifyOptions& opt, Tally& tally) {
  const unsigned n = space.n();
  std::vector<std::vector<Subspace>> grass(n + 1);
  for (unsigned k = 0; k <= n; ++k) grass[k] = enumerate_grassmannian(space, k, opt.budget);

  for (const PointSet& E : suite_subsets(space, opt)) {
    const std::string at = where(space) + " " + set_label(E);
    const Spectrum S = dft(E);
    const PlancherelCheck pl = plancherel_check(S);
    tally.record("plancherel", pl.ok && S.at(0) == Complex(static_cast<double>(E.cardinality()), 0), at);

    for (unsigned m = 0; m <= n; ++m) {
      const std::string atm = at + " m=" + std::to_string(m);
      const EnergyIdentity comb = verify_energy_identity(E, m, opt.budget);
      tally.record("energy_identity_combinatorial", comb.equal,
                   atm + ": " + comb.lhs.str() + " vs " + comb.rhs.str());
      const FourierEnergyIdentity four = verify_energy_identity_fourier(E, m, kSpectralTolerance, opt.budget);
      tally.record("energy_identity_fourier", four.ok,
                   atm + ": diff " + std::to_string(four.max_abs_diff));
    }

    for (unsigned k = 0; k <= n; ++k) {
      const unsigned codim = n - k;
      for (const Subspace& W : grass[k]) {
        const std::string atw = at + " W=" + subspace_label(W);
        const SubspacePlancherel sp = subspace_plancherel(E, W, S);
        tally.record("subspace_plancherel", sp.ok,
                     atw + ": " + std::to_string(sp.combinatorial_lhs) + " vs " +
                         std::to_string(sp.spectral_rhs));

        const CosetProfile profile = coset_profile(E, W);
        tally.record("cauchy_schwarz", profile.cauchy_schwarz_holds(), atw);

        const ProjectionImage image = project(E, W);
        const std::uint64_t cap = std::min(E.cardinality(), space.pow(codim));
        const bool bounded = image.size <= cap && (E.empty() || image.size >= 1) &&
                             image.size == profile.image_size();
        tally.record("projection_size_bound", bounded, atw);

        // W plays the role of V here: P_W(E) against pi^{Per(W)}(E).
        const ProjectionImage dual = project_onto(E, W);
        const ProjectionImage direct = project(E, perp(W));
        tally.record("projection_duality", dual.cosets == direct.cosets && dual.size == direct.size, atw);
      }
    }
  }
}

}  // namespace

std::vector<PointSet> suite_subsets(const AmbientSpace& space, const VerifyOptions& options) {
  std::vector<PointSet> sets;
  if (space.point_count() <= options.exhaustive_points && space.point_count() < 64) {
    const std::uint64_t total = std::uint64_t{1} << space.point_count();
    for (std::uint64_t mask = 0; mask < total; ++mask) sets.push_back(PointSet::from_mask(space, mask));
    return sets;
  }
  sets.push_back(PointSet(space));
  sets.push_back(PointSet::full(space));
  for (std::uint64_t i = 0; i < options.samples; ++i) {
    const double delta = static_cast<double>(i % 9 + 1) / 10.0;
    sets.push_back(percolation_sample(PercolationModel(space, delta, options.seed), i));
  }
  return sets;
}

std::vector<CheckResult> run_identity_suite(const VerifyOptions& options) {
  Tally tally;
  for (std::uint64_t p : options.primes) {
    for (unsigned n : options.dims) {
      const AmbientSpace space(p, n);
      check_subspaces(space, options, tally);
      check_sets(space, options, tally);
    }
  }
  return tally.take();
}

}  // namespace ffproj
