#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffproj/core.hpp"
#include "ffproj/subspaces.hpp"

namespace ffproj {

using Complex = std::complex<double>;

/// Relative tolerance for identities checked in double precision.
inline constexpr double kSpectralTolerance = 1e-9;
inline constexpr std::uint64_t kSpectrumBudget = std::uint64_t{1} << 22;

/// e(-t) = exp(-2 pi i t / p).
Complex character(std::uint64_t t, std::uint32_t p);

/// Full table of E^(xi) = sum_{x in E} e(-x.xi), indexed by PointIndex.
class Spectrum {
 public:
  Spectrum(AmbientSpace space, std::vector<Complex> values, std::uint64_t source_cardinality);

  const AmbientSpace& space() const noexcept { return space_; }
  std::uint64_t source_cardinality() const noexcept { return source_cardinality_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex at(PointIndex xi) const { return values_.at(xi); }
  Complex at(const FpVector& xi) const { return values_.at(encode(space_, xi)); }
  /// |E^(xi)|^2
  double power(PointIndex xi) const { return std::norm(values_.at(xi)); }

 private:
  AmbientSpace space_;
  std::vector<Complex> values_;
  std::uint64_t source_cardinality_;
};

/// Axis-by-axis transform: n passes of naive length-p DFTs, O(n p^{n+1}).
/// Refuses spaces above `budget` points; use fourier_coefficient there.
Spectrum dft(const PointSet& E, std::uint64_t budget = kSpectrumBudget);

/// Direct O(|E|) evaluation of a single coefficient.
Complex fourier_coefficient(const PointSet& E, const FpVector& xi);

struct PlancherelCheck {
  double lhs = 0;  // sum |E^(xi)|^2
  double rhs = 0;  // p^n |E|
  bool ok = false;
};
PlancherelCheck plancherel_check(const Spectrum& S, double tolerance = kSpectralTolerance);

struct SubspacePlancherel {
  std::uint64_t combinatorial_lhs = 0;  // sum_j |E cap (x_j + W)|^2
  double spectral_rhs = 0;              // p^{-m} sum_{xi in Per(W)} |E^(xi)|^2
  bool ok = false;
};
SubspacePlancherel subspace_plancherel(const PointSet& E, const Subspace& W, const Spectrum& S,
                                       double tolerance = kSpectralTolerance);

/// sum_{y in Per(V)} e(-x.y): |Per(V)| if x in V, else 0.
Complex character_sum(const Subspace& V, const FpVector& x);

/// {(x, x.x) : x in F_p^{n-1}}
PointSet paraboloid(const AmbientSpace& space);
/// {x : x.x = r}
PointSet sphere(const AmbientSpace& space, Residue r);

struct DecayReport {
  std::uint64_t cardinality = 0;
  double max_nonzero_modulus = 0;
  double ratio_salem = 0;  // max / sqrt(|E|)
  double ratio_weak = 0;   // max / sqrt(|E| ln p)
  PointIndex witness = 0;
  /// sqrt((p^n|E| - |E|^2) / (p^n - 1)): by Plancherel some xi != 0 reaches it.
  double plancherel_floor = 0;
  bool plancherel_floor_ok = false;
};
DecayReport salem_deficiency(const Spectrum& S);
DecayReport salem_deficiency(const PointSet& E);

/// Decay hypothesis |E^(xi)| <= C |E|^alpha for xi != 0.
struct SalemProfile {
  SalemProfile(double C, double alpha);
  double C;
  double alpha;
};

struct FourierProjectionReport {
  unsigned m = 0;
  double C = 0, alpha = 0;
  std::uint64_t cardinality = 0;
  double max_nonzero_modulus = 0;
  bool profile_satisfied = false;
  // Constants read off the proof: C1 = C^{1/(1-alpha)}, C2 = 1/(2C^2), C3 = (2C^2)^{1/(2-2alpha)}.
  double C1 = 0, C2 = 0, C3 = 0;
  double threshold_ab = 0;  // C1 p^{m/(2-2alpha)}
  double threshold_c = 0;   // C3 p^{m/(1-alpha)}
  bool case_a = false, case_b = false, case_c = false;
  double required_a = 0;  // C2 |E|^{2-2alpha}
  double required_b = 0;  // p^m / 2
  std::uint64_t required_c = 0;  // p^m
  std::uint64_t min_image = 0;
  std::uint64_t directions = 0;
  bool conclusion_a = false, conclusion_b = false, conclusion_c = false;

  /// Applicable conclusions hold whenever the profile does.
  bool holds() const {
    if (!profile_satisfied) return true;
    return (!case_a || conclusion_a) && (!case_b || conclusion_b) && (!case_c || conclusion_c);
  }
};

/// Decides the applicable cases from |E| and the profile, then checks each conclusion
/// against the minimum image size over G(n, n-m).
FourierProjectionReport fourier_projection_bounds(const PointSet& E, const Spectrum& S,
                                                  const SalemProfile& profile, unsigned m,
                                                  std::uint64_t budget = kDefaultSubspaceBudget);

/// CSV of xi coordinates, real, imag, modulus in PointIndex order.
void write_spectrum_csv(std::ostream& out, const Spectrum& S);

}  // namespace ffproj
