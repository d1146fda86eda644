#ifndef NCLASS_FOCK_CORE_HPP
#define NCLASS_FOCK_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "nclass/quadrature.hpp"

namespace nclass {

using Complex = std::complex<double>;

// Phase-space point (dimensionless quadrature amplitudes).
using ComplexPoint = std::complex<double>;

bool is_finite(ComplexPoint p);

// Operations reject states whose truncation tail exceeds this unless the
// caller passes an explicit tolerance. Silent truncation is the dominant
// numerical hazard in Fock-space work, so everything fails fast instead.
inline constexpr double k_default_tail_tol = 1e-8;

// Density operator on the truncated Fock space {|0>, ..., |dim-1>}.
// Hermitian by construction, trace within 1e-12 of one after normalization.
// `tail_mass` is the estimated probability weight living above the
// truncation in the untruncated state this matrix approximates.
struct DensityMatrix {
  Eigen::MatrixXcd elements;
  double tail_mass = 0.0;

  int dim() const { return static_cast<int>(elements.rows()); }
};

// Photon-number distribution p_0 .. p_{dim-1}; the deficit from one equals
// the truncation tail.
struct PhotonStatistics {
  std::vector<double> probs;

  double deficit() const;
};

// --- constructors -----------------------------------------------------------

// Number-state projector |n><n|. Throws std::out_of_range for n >= dim.
DensityMatrix make_fock(int n, int dim);

// Coherent-state projector |alpha><alpha| with amplitudes
// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!). Throws TruncationError when the
// Poisson tail above dim exceeds `tail_tol`.
DensityMatrix make_coherent(ComplexPoint alpha, int dim,
                            double tail_tol = k_default_tail_tol);

// Thermal state with mean photon number nbar; geometric diagonal
// renormalized over the kept block.
DensityMatrix make_thermal(double nbar, int dim,
                           double tail_tol = k_default_tail_tol);

// Single-photon-added thermal state: a^dag rho_th a, normalized by its
// trace, then degraded by the loss channel with efficiency eta. (Loss is
// applied after photon addition, modelling detection efficiency.)
DensityMatrix make_spats(double nbar, double eta, int dim,
                         double tail_tol = k_default_tail_tol);

// Convex mixture; weights must be nonnegative and sum to one within 1e-9.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts);

// --- channels ---------------------------------------------------------------

// Pure-loss (beamsplitter to vacuum) channel in full Kraus form,
// rho' = sum_k K_k rho K_k^dag with K_k = sum_n sqrt(C(n,k)) eta^{(n-k)/2}
// (1-eta)^{k/2} |n-k><n|. For Fock-diagonal input this reduces to binomial
// downconversion of the photon statistics.
DensityMatrix apply_loss(const DensityMatrix& rho, double eta);

// Conjugation with the truncated displacement operator, rho -> D(a) rho
// D(-a). The trace lost to truncation is added to tail_mass; throws
// TruncationError when the total exceeds `tail_tol`.
DensityMatrix displace_state(const DensityMatrix& rho, ComplexPoint alpha,
                             double tail_tol = k_default_tail_tol);

// --- observables ------------------------------------------------------------

// Diagonal of rho. Entries below -1e-12 raise NegativityError; entries in
// [-1e-12, 0) are clamped to zero as roundoff.
PhotonStatistics photon_statistics(const DensityMatrix& rho);

double mean_photon_number(const DensityMatrix& rho);

// Characteristic function of the P function,
//   Phi(beta) = e^{|beta|^2/2} Tr{rho D(beta)}.
// Satisfies Phi(0) = 1 and Phi(-beta) = conj(Phi(beta)). Throws RangeError
// once e^{|beta|^2/2} would overflow.
Complex char_function(const DensityMatrix& rho, ComplexPoint beta);

// Wigner function by 2D quadrature of the Fourier transform of
// Phi(beta) e^{-|beta|^2/2}. The imaginary residue is checked against 1e-8
// before being discarded.
double wigner(const DensityMatrix& rho, ComplexPoint alpha,
              const QuadConfig& cfg = {});

// Wigner function on a square grid [-half_width, half_width]^2 with n points
// per axis; shares quadrature tables across grid points. Returns the values
// in row-major order (re fastest) plus min value and its location.
struct WignerGrid {
  std::vector<double> re_axis, im_axis;
  std::vector<double> values;
  double min_value = 0.0;
  ComplexPoint min_location{0.0, 0.0};
};
WignerGrid wigner_grid(const DensityMatrix& rho, double half_width, int n,
                       const QuadConfig& cfg = {});

// --- displacement matrix ----------------------------------------------------

// Truncated matrix of D(alpha) = exp(alpha a^dag - alpha* a) in the Fock
// basis. Elements are evaluated with a coupled Laguerre recurrence that
// carries the full prefactor sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} along,
// keeping every intermediate bounded by one; raw factorial ratios would
// overflow long before the dims used here.
Eigen::MatrixXcd displacement_matrix(int dim, ComplexPoint alpha);

// Radial factor R_k(r)[m] = sqrt(m!/(m+k)!) r^k e^{-r^2/2} L_m^{(k)}(r^2),
// i.e. <m+k| D(r) |m> for real r >= 0; fills `out` for m = 0..count-1.
void displacement_radial_column(int k, double r, int count,
                                std::vector<double>& out);

}  // namespace nclass

#endif
