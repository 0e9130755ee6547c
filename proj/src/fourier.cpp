#include "ffproj/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "ffproj/parallel.hpp"
#include "ffproj/projections.hpp"

namespace ffproj {

Complex character(std::uint64_t t, std::uint32_t p) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(t % p) / p;
  return {std::cos(angle), std::sin(angle)};
}

Spectrum::Spectrum(AmbientSpace space, std::vector<Complex> values, std::uint64_t source_cardinality)
    : space_(std::move(space)), values_(std::move(values)), source_cardinality_(source_cardinality) {
  if (values_.size() != space_.point_count()) {
    throw ContractViolation("spectrum needs one value per point");
  }
}

Spectrum dft(const PointSet& E, std::uint64_t budget) {
  const AmbientSpace& space = E.space();
  if (space.point_count() > budget) {
    throw BudgetExceeded("full spectrum needs p^n <= " + std::to_string(budget) +
                         "; evaluate single coefficients with fourier_coefficient instead");
  }
  const std::uint32_t p = space.p();
  std::vector<Complex> twiddle(p);
  for (std::uint32_t t = 0; t < p; ++t) twiddle[t] = character(t, p);

  std::vector<Complex> values(space.point_count(), Complex{0, 0});
  for (PointIndex idx : E.indices()) values[idx] = 1.0;

  for (unsigned axis = 0; axis < space.n(); ++axis) {
    const std::uint64_t stride = space.pow(axis);
    const std::uint64_t lines = space.point_count() / p;
    parallel_for(static_cast<std::size_t>(lines), [&](std::size_t line) {
      const std::uint64_t outer = line / stride;
      const std::uint64_t inner = line % stride;
      const std::uint64_t base = outer * stride * p + inner;
      std::vector<Complex> in(p);
      for (std::uint32_t j = 0; j < p; ++j) in[j] = values[base + j * stride];
      for (std::uint32_t k = 0; k < p; ++k) {
        Complex acc{0, 0};
        std::uint64_t phase = 0;
        for (std::uint32_t j = 0; j < p; ++j) {
          acc += in[j] * twiddle[phase];
          phase += k;
          if (phase >= p) phase -= p;
        }
        values[base + k * stride] = acc;
      }
    });
  }
  values[0] = static_cast<double>(E.cardinality());
  return Spectrum(space, std::move(values), E.cardinality());
}

Complex fourier_coefficient(const PointSet& E, const FpVector& xi) {
  const AmbientSpace& space = E.space();
  check_in_space(space, xi);
  Complex acc{0, 0};
  for (const FpVector& x : E.points()) acc += character(dot(space, x, xi), space.p());
  return acc;
}

PlancherelCheck plancherel_check(const Spectrum& S, double tolerance) {
  PlancherelCheck check;
  for (const Complex& v : S.values()) check.lhs += std::norm(v);
  check.rhs = static_cast<double>(S.space().point_count()) * static_cast<double>(S.source_cardinality());
  check.ok = std::abs(check.lhs - check.rhs) <= tolerance * std::max(1.0, check.rhs);
  return check;
}

SubspacePlancherel subspace_plancherel(const PointSet& E, const Subspace& W, const Spectrum& S,
                                       double tolerance) {
  if (!(E.space() == S.space())) throw ContractViolation("spectrum belongs to another space");
  SubspacePlancherel out;
  out.combinatorial_lhs = coset_profile(E, W).sum_of_squares();
  double acc = 0;
  perp(W).for_each_element([&](PointIndex xi) { acc += S.power(xi); });
  out.spectral_rhs = acc / static_cast<double>(S.space().pow(W.codim()));
  const double lhs = static_cast<double>(out.combinatorial_lhs);
  out.ok = std::abs(lhs - out.spectral_rhs) <= tolerance * std::max(1.0, lhs);
  return out;
}

Complex character_sum(const Subspace& V, const FpVector& x) {
  const AmbientSpace& space = V.space();
  check_in_space(space, x);
  Complex acc{0, 0};
  std::vector<Residue> y(space.n());
  perp(V).for_each_element([&](PointIndex idx) {
    decode_into(space, idx, y);
    std::uint64_t d = 0;
    for (unsigned i = 0; i < space.n(); ++i) d += std::uint64_t{x[i]} * y[i];
    acc += character(d % space.p(), space.p());
  });
  return acc;
}

PointSet paraboloid(const AmbientSpace& space) {
  if (space.n() < 2) throw ContractViolation("paraboloid needs n >= 2");
  const std::uint32_t p = space.p();
  const unsigned n = space.n();
  PointSetBuilder builder(space);
  std::vector<Residue> coords(n);
  for (std::uint64_t base = 0; base < space.pow(n - 1); ++base) {
    std::uint64_t rest = base;
    std::uint64_t norm = 0;
    for (unsigned i = 0; i + 1 < n; ++i) {
      coords[i] = static_cast<Residue>(rest % p);
      rest /= p;
      norm += std::uint64_t{coords[i]} * coords[i];
    }
    coords[n - 1] = static_cast<Residue>(norm % p);
    builder.insert(FpVector(coords));
  }
  return std::move(builder).build();
}

PointSet sphere(const AmbientSpace& space, Residue r) {
  if (space.n() < 2) throw ContractViolation("sphere needs n >= 2");
  if (r >= space.p()) throw ContractViolation("sphere radius must be a residue mod p");
  PointSetBuilder builder(space);
  std::vector<Residue> coords(space.n());
  for (PointIndex idx = 0; idx < space.point_count(); ++idx) {
    decode_into(space, idx, coords);
    std::uint64_t norm = 0;
    for (Residue c : coords) norm += std::uint64_t{c} * c;
    if (norm % space.p() == r) builder.insert(idx);
  }
  return std::move(builder).build();
}

DecayReport salem_deficiency(const Spectrum& S) {
  const std::uint64_t size = S.source_cardinality();
  const std::uint64_t total = S.space().point_count();
  if (size == 0 || size == total) {
    throw ContractViolation("decay is undefined for the empty set and the full space");
  }
  DecayReport report;
  report.cardinality = size;
  report.witness = 1;
  for (PointIndex xi = 1; xi < total; ++xi) {
    const double modulus = std::abs(S.at(xi));
    if (modulus > report.max_nonzero_modulus) {
      report.max_nonzero_modulus = modulus;
      report.witness = xi;
    }
  }
  const double e = static_cast<double>(size);
  const double q = static_cast<double>(total);
  report.ratio_salem = report.max_nonzero_modulus / std::sqrt(e);
  report.ratio_weak = report.max_nonzero_modulus / std::sqrt(e * std::log(static_cast<double>(S.space().p())));
  report.plancherel_floor = std::sqrt((q * e - e * e) / (q - 1));
  report.plancherel_floor_ok = report.max_nonzero_modulus >=
                               report.plancherel_floor * (1 - kSpectralTolerance) - kSpectralTolerance;
  return report;
}

DecayReport salem_deficiency(const PointSet& E) {
  if (E.empty() || E.cardinality() == E.space().point_count()) {
    throw ContractViolation("decay is undefined for the empty set and the full space");
  }
  return salem_deficiency(dft(E));
}

SalemProfile::SalemProfile(double C_, double alpha_) : C(C_), alpha(alpha_) {
  if (!(C > 0)) throw ContractViolation("Salem profile needs C > 0");
  if (!(alpha >= 0.5 && alpha < 1)) throw ContractViolation("Salem profile needs alpha in [1/2, 1)");
}

FourierProjectionReport fourier_projection_bounds(const PointSet& E, const Spectrum& S,
                                                  const SalemProfile& profile, unsigned m,
                                                  std::uint64_t budget) {
  const AmbientSpace& space = E.space();
  if (!(space == S.space()) || S.source_cardinality() != E.cardinality()) {
    throw ContractViolation("spectrum does not belong to this point set");
  }
  if (m < 1 || m >= space.n()) throw ContractViolation("projection bounds need 1 <= m <= n-1");

  FourierProjectionReport r;
  r.m = m;
  r.C = profile.C;
  r.alpha = profile.alpha;
  r.cardinality = E.cardinality();
  for (PointIndex xi = 1; xi < space.point_count(); ++xi) {
    r.max_nonzero_modulus = std::max(r.max_nonzero_modulus, std::abs(S.at(xi)));
  }
  const double size = static_cast<double>(r.cardinality);
  const double decay_cap = profile.C * std::pow(size, profile.alpha);
  r.profile_satisfied = r.cardinality > 0 &&
                        r.max_nonzero_modulus <= decay_cap * (1 + kSpectralTolerance) + kSpectralTolerance;

  const double C2sq = profile.C * profile.C;
  const double p = static_cast<double>(space.p());
  const double md = static_cast<double>(m);
  r.C1 = std::pow(profile.C, 1.0 / (1.0 - profile.alpha));
  r.C2 = 1.0 / (2.0 * C2sq);
  r.C3 = std::pow(2.0 * C2sq, 1.0 / (2.0 - 2.0 * profile.alpha));
  r.threshold_ab = r.C1 * std::pow(p, md / (2.0 - 2.0 * profile.alpha));
  r.threshold_c = r.C3 * std::pow(p, md / (1.0 - profile.alpha));
  r.case_a = size <= r.threshold_ab;
  r.case_b = !r.case_a;
  r.case_c = size > r.threshold_c;
  r.required_a = r.C2 * std::pow(size, 2.0 - 2.0 * profile.alpha);
  r.required_c = space.pow(m);
  r.required_b = static_cast<double>(r.required_c) / 2.0;

  const Directions dirs(space, m, budget);
  const auto sizes = image_sizes(E, dirs);
  r.directions = dirs.size();
  r.min_image = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
  const double observed = static_cast<double>(r.min_image);
  r.conclusion_a = observed >= r.required_a * (1 - kSpectralTolerance);
  r.conclusion_b = observed >= r.required_b;
  r.conclusion_c = r.min_image == r.required_c;
  return r;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& S) {
  const AmbientSpace& space = S.space();
  for (unsigned i = 0; i < space.n(); ++i) out << "xi" << (i + 1) << ',';
  out << "real,imag,modulus\n";
  std::vector<Residue> coords(space.n());
  const auto old_precision = out.precision(17);
  for (PointIndex xi = 0; xi < space.point_count(); ++xi) {
    decode_into(space, xi, coords);
    for (Residue c : coords) out << c << ',';
    const Complex v = S.at(xi);
    out << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace ffproj
