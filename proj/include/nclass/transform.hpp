#ifndef NCLASS_TRANSFORM_HPP
#define NCLASS_TRANSFORM_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nclass/fock_core.hpp"
#include "nclass/quadrature.hpp"

namespace nclass {

// Tr{rho D(r e^{i theta})} evaluated fast on a polar grid. Because
// <m+k|D|m> carries the angular dependence only through e^{i k theta}, the
// trace collapses to a Fourier series in theta whose radial coefficients are
// built once per radius in O(dim^2) and evaluated per angle in O(dim).
// Offsets k whose diagonal of rho vanishes identically are skipped, so
// phase-symmetric states cost O(1) per angle.
class DisplacedTraceTable {
 public:
  DisplacedTraceTable(const DensityMatrix& rho, std::span<const double> radii);

  Complex eval(std::size_t radius_index, double theta) const;

 private:
  std::vector<int> offsets_;                   // k >= 0 with support in rho
  std::vector<std::vector<Complex>> coef_;     // [radius][offset]
};

// Batch evaluation of
//   F(alpha) = (1/pi^2) int d^2beta  Tr{rho D(beta)} u(beta) e^{alpha beta* - alpha* beta}
// over a polar rule of radius `radius` (Gauss-Legendre radial segments split
// at `breakpoints`, trapezoid angular). The rule is doubled until the
// largest change across alphas is below cfg.tol; AccuracyError carries the
// achieved estimate otherwise. This one engine backs both the Wigner
// function (u = 1) and the filtered-P quadrature (u = e^{|beta|^2/2} Omega).
std::vector<Complex> filtered_transform(
    const DensityMatrix& rho, const std::function<Complex(ComplexPoint)>& u,
    double radius, std::span<const double> breakpoints,
    std::span<const ComplexPoint> alphas, const QuadConfig& cfg);

}  // namespace nclass

#endif
