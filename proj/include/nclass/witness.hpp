#ifndef NCLASS_WITNESS_HPP
#define NCLASS_WITNESS_HPP

#include <span>
#include <vector>

#include "nclass/fock_core.hpp"

namespace nclass {

// One member of the universal witness family: three real parameters, the
// filter width w > 0 and the phase-space displacement alpha.
struct WitnessSpec {
  double w = 1.0;
  ComplexPoint alpha{0.0, 0.0};
};

// Witness expectation value with an explicit truncation-error budget. The
// bound is (max |diagonal| probed over n in [dim, 4 dim)) * tail_mass;
// `sign_certified` is false when the bound reaches |value|, in which case
// the sign of `value` must not be used as a nonclassicality verdict.
struct ExpectationReport {
  double value = 0.0;
  double truncation_bound = 0.0;
  int terms_used = 0;
  int dim_used = 0;
  bool sign_certified = false;
};

// Fock diagonal element <n| W_w |n> of the disc-kernel witness,
//   (w^2/16) sum_{m=0}^{n} (-w^2/4)^m C(2m+2, m) / ((m+1)!)^2 * n!/(n-m)!.
// The alternating sum is evaluated with the term-ratio recurrence (never raw
// factorials) while its roundoff stays below 1e-12; once the tracked peak
// term would eat the answer -- the series alternates with peak ~e^{2 w sqrt n}
// -- evaluation switches to the equivalent radial integral
//   (2/pi) int_0^w Omega_1(r/w) L_n(r^2) r dr,
// which stays accurate for n well beyond 10^4.
double witness_diag(int n, double w);

// All diagonal elements n = 0 .. count-1 via the radial integral, sharing
// one Laguerre recurrence sweep per quadrature node. Self-checks by node
// doubling.
std::vector<double> witness_diag_table(int count, double w);

// Witness value on a coherent state at distance r from the witness center:
// [J1(w r)]^2 / (4 r^2), with the limit w^2/16 at r = 0.
double witness_coherent_closed_form(double r, double w);

// Partial trace sum of the width-w witness with the filter normalized to
// one at the origin; converges to 1/pi like O(dim^{-1/2}).
double witness_trace(double w, int dim);

// Expectation <W_w(alpha)> for `rho` via displaced photon statistics:
// displace the state by -alpha, then sum diag * p_n.
ExpectationReport expectation(const DensityMatrix& rho, const WitnessSpec& spec);

struct WidthScanPoint {
  double w = 0.0;
  ExpectationReport report;
};

struct WidthScanResult {
  std::vector<WidthScanPoint> points;
  bool detected = false;   // certified sign change positive -> negative
  double w_star = 0.0;     // bisection-refined crossing, 1e-4 resolution
};

// Expectation along an increasing width grid, with detection of the first
// certified sign change. The crossing is only reported when both bracketing
// values exceed their truncation bounds in magnitude.
WidthScanResult scan_width(const DensityMatrix& rho, ComplexPoint alpha,
                           std::span<const double> w_grid);

// Mandel Q = (<n^2> - <n>^2 - <n>) / <n>; negative values are nonclassical.
// Undefined on states with zero mean photon number (throws
// std::domain_error).
double mandel_q(const DensityMatrix& rho);

// Variance of x_phi = a e^{-i phi} + a^dag e^{i phi}. The vacuum level is 1
// in these units; values below 1 signal squeezing.
double quadrature_variance(const DensityMatrix& rho, double phase);

struct FirstOrderTestResult {
  double max_modulus = 0.0;
  bool witnessed = false;
  ComplexPoint argmax{0.0, 0.0};
};

struct FirstOrderGridConfig {
  double beta_max = 3.0;
  int radial = 48;
  int angular = 64;
};

// Classicality test of first order: max |Phi(beta)| over a polar grid.
// Any mixture of coherent states stays at or below 1; an excess beyond
// 1 + 1e-9 witnesses nonclassicality.
FirstOrderTestResult first_order_char_test(const DensityMatrix& rho,
                                           const FirstOrderGridConfig& cfg = {});

}  // namespace nclass

#endif
