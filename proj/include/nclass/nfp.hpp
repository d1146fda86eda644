#ifndef NCLASS_NFP_HPP
#define NCLASS_NFP_HPP

#include <vector>

#include "nclass/filters.hpp"
#include "nclass/fock_core.hpp"
#include "nclass/quadrature.hpp"

namespace nclass {

// Filtered P function of `rho` at phase-space point alpha,
//   P_w(alpha) = (1/pi^2) int d^2beta Phi(beta) Omega_w(beta)
//                e^{alpha beta* - alpha* beta},
// by polar quadrature over the filter support (Gauss-Legendre radial x
// trapezoid angular, doubled to self-convergence). The second, independent
// route to the witness expectation. The imaginary part must stay below 1e-7
// (Hermitian-symmetry certificate) or SymmetryError is thrown.
double nfp_point(const DensityMatrix& rho, const FilterFamily& family, double w,
                 ComplexPoint alpha, const QuadConfig& cfg = {});

struct NfpGridConfig {
  int n = 41;              // points per axis
  double half_width = 3.0; // grid spans [-half_width, half_width]^2
};

struct NfpQuadReport {
  double max_abs_imag = 0.0;  // worst Hermitian-symmetry residue on the grid
};

struct NfpGrid {
  std::vector<double> re_axis, im_axis;
  std::vector<double> values;  // row major, re fastest
  double w = 0.0;
  double min_value = 0.0;
  ComplexPoint min_location{0.0, 0.0};
  NfpQuadReport quad_report;
};

NfpGrid nfp_grid(const DensityMatrix& rho, const FilterFamily& family, double w,
                 const NfpGridConfig& grid_cfg = {}, const QuadConfig& cfg = {});

}  // namespace nclass

#endif
