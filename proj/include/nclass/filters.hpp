#ifndef NCLASS_FILTERS_HPP
#define NCLASS_FILTERS_HPP

#include <functional>
#include <span>
#include <vector>

#include "nclass/fock_core.hpp"

namespace nclass {

// Rotationally symmetric kernel omega_1; the building block whose
// autocorrelation yields a filter family.
struct FilterKernel {
  std::function<double(double)> radial;  // profile as a function of |beta|
  double support_radius = 0.0;           // finite support or numeric cutoff
  bool indicator = false;                // exact {0,1} profile (disc)

  double eval(ComplexPoint beta) const { return radial(std::abs(beta)); }
};

// Disc kernel: 1 for |beta| < 1/2, 0 elsewhere.
FilterKernel disc_kernel();

// Smooth reference kernel exp(-|beta|^4). Its quartic decay beats the
// e^{|beta|^2/2} growth required of filters, and building the family by
// autocorrelation makes the Fourier transform a square, hence nonnegative.
FilterKernel quartic_reference_kernel();

struct AutocorrConfig {
  int radial = 192;
  int angular = 192;
  int max_doublings = 3;
  double tol = 1e-10;
};

// Autocorrelation integral Omega(beta) = int omega(b') omega(beta + b') d^2b'.
// Indicator kernels use the exact overlap-arc reduction; smooth kernels a
// polar rule with endpoint-clustered radial nodes. Throws AccuracyError if
// doubling does not self-converge.
double autocorrelate(const FilterKernel& kernel, ComplexPoint beta,
                     const AutocorrConfig& cfg = {});

// Closed-form autocorrelation of the disc kernel (lens overlap area):
// (1/2) arccos(s) - (s/2) sqrt(1-s^2) for separation s in [0, 1), 0 beyond.
// Unnormalized: value pi/4 at s = 0.
double disc_autocorrelation(double separation);

// Width-parameterized filter family Omega_w(beta). Families built by pure
// width scaling satisfy Omega_w(beta) = Omega_1(beta/w); the witness-derived
// construction below does not, which `pure_scaling` records.
struct FilterFamily {
  std::function<Complex(ComplexPoint, double)> eval;
  std::function<double(double)> support;                    // radius at width w
  std::function<std::vector<double>(double)> breakpoints;   // interior kinks
  bool normalized = false;
  bool pure_scaling = true;
};

// Disc filter family. Kept unnormalized by default (Omega_w(0) = pi/4) so
// the witness diagonal coefficients come out without extra factors; the
// normalized variant divides by pi/4 for display.
FilterFamily disc_family(bool normalized = false);

// Family built numerically as the autocorrelation of a kernel, sampled into
// a radial table (cubic interpolation) at construction.
FilterFamily autocorrelation_family(const FilterKernel& kernel, bool normalize,
                                    const AutocorrConfig& cfg = {});

// Normalized quartic-kernel family; the reference family for the
// witness-derived construction.
FilterFamily quartic_reference_family();

// Rescales the width argument: scale_width(F, a) evaluated at width w equals
// F at width a*w. Composition multiplies the factors.
FilterFamily scale_width(const FilterFamily& family, double factor);

// Characteristic function (Q convention) of a trace-1/pi witness; value 1 at
// the origin. For compactly supported witnesses `support_radius` is finite.
struct WitnessCharFn {
  std::function<Complex(ComplexPoint)> eval;
  double support_radius = 0.0;
};

// The disc-witness characteristic function: the disc autocorrelation
// normalized to one at the origin.
WitnessCharFn disc_witness_char_fn();

// Mixing weight f(w) = exp(-(w-1)^2) and Gaussian exponent
// g(w) = max(1 - 1/w^2, 0) of the witness-to-filter construction.
double witness_filter_weight(double w);
double witness_filter_gaussian_exponent(double w);

// Filter family built from a witness characteristic function:
//   Omega_w(beta) = f(w) PhiQ(beta/w) e^{-g(w)|beta|^2/2}
//                 + (1 - f(w)) Omega'_w(beta),
// where Omega'_w is a reference family satisfying the filter conditions.
// At w = 1 this returns PhiQ exactly. Defined for w >= 1 only; smaller
// widths throw std::domain_error.
Complex filter_from_witness(const WitnessCharFn& phi_q,
                            const FilterFamily& reference, double w,
                            ComplexPoint beta);
FilterFamily witness_filter_family(const WitnessCharFn& phi_q,
                                   const FilterFamily& reference);

// Sampled evidence for the three filter conditions at one width:
//   C1 - |Omega_w(beta)| e^{|beta|^2/2} integrable (finite support or decay),
//   C2 - nonnegative Fourier transform,
//   C3 - normalization at the origin and approach to the large-width limit.
struct ConditionReport {
  double w = 0.0;
  bool c1_pass = false;
  double c1_tail_over_peak = 0.0;
  bool c2_pass = false;
  double c2_min = 0.0;
  double value_at_zero = 0.0;
  bool c3_normalized = false;
  bool c3_limit_pass = false;

  bool all_pass() const {
    return c1_pass && c2_pass && c3_normalized && c3_limit_pass;
  }
};

struct ConditionCheckConfig {
  double alpha_max = 6.0;
  int alpha_samples = 80;
  int radial_order = 512;
  double c2_tol = 1e-8;
  int decay_samples = 48;
};

std::vector<ConditionReport> verify_filter_conditions(
    const FilterFamily& family, std::span<const double> widths,
    const ConditionCheckConfig& cfg = {});

}  // namespace nclass

#endif
