#include "nclass/nfp.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nclass/errors.hpp"
#include "nclass/transform.hpp"

namespace nclass {

namespace {

// Integrand weight against Tr{rho D}: u(beta) = e^{|beta|^2/2} Omega_w(beta).
std::function<Complex(ComplexPoint)> nfp_weight(const FilterFamily& family,
                                                double w) {
  return [eval = family.eval, w](ComplexPoint beta) {
    return std::exp(0.5 * std::norm(beta)) * eval(beta, w);
  };
}

double checked_radius(const FilterFamily& family, double w) {
  if (!(w > 0.0)) throw std::domain_error("nfp: width w must be > 0");
  const double radius = family.support(w);
  if (0.5 * radius * radius > 700.0) {
    std::ostringstream msg;
    msg << "nfp: filter support radius " << radius
        << " overflows e^{|beta|^2/2}; reduce w";
    throw RangeError(msg.str());
  }
  return radius;
}

}  // namespace

double nfp_point(const DensityMatrix& rho, const FilterFamily& family, double w,
                 ComplexPoint alpha, const QuadConfig& cfg) {
  if (!is_finite(alpha)) throw std::invalid_argument("nfp_point: alpha must be finite");
  const double radius = checked_radius(family, w);
  const std::vector<double> breaks = family.breakpoints(w);
  const ComplexPoint pts[1] = {alpha};
  const auto values =
      filtered_transform(rho, nfp_weight(family, w), radius, breaks, pts, cfg);
  if (std::abs(values[0].imag()) > 1e-7) {
    std::ostringstream msg;
    msg << "nfp_point: imaginary residue " << values[0].imag()
        << " violates Hermitian symmetry";
    throw SymmetryError(msg.str());
  }
  return values[0].real();
}

NfpGrid nfp_grid(const DensityMatrix& rho, const FilterFamily& family, double w,
                 const NfpGridConfig& grid_cfg, const QuadConfig& cfg) {
  if (grid_cfg.n < 1) throw std::invalid_argument("nfp_grid: need n >= 1");
  const double radius = checked_radius(family, w);
  const std::vector<double> breaks = family.breakpoints(w);

  NfpGrid grid;
  grid.w = w;
  grid.re_axis.resize(grid_cfg.n);
  grid.im_axis.resize(grid_cfg.n);
  for (int i = 0; i < grid_cfg.n; ++i) {
    const double t = grid_cfg.n == 1
                         ? 0.0
                         : -grid_cfg.half_width +
                               2.0 * grid_cfg.half_width * i / (grid_cfg.n - 1);
    grid.re_axis[i] = t;
    grid.im_axis[i] = t;
  }
  std::vector<ComplexPoint> alphas;
  alphas.reserve(std::size_t(grid_cfg.n) * grid_cfg.n);
  for (int j = 0; j < grid_cfg.n; ++j)
    for (int i = 0; i < grid_cfg.n; ++i)
      alphas.emplace_back(grid.re_axis[i], grid.im_axis[j]);

  const auto values =
      filtered_transform(rho, nfp_weight(family, w), radius, breaks, alphas, cfg);

  grid.values.resize(values.size());
  grid.min_value = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double imag = std::abs(values[i].imag());
    grid.quad_report.max_abs_imag = std::max(grid.quad_report.max_abs_imag, imag);
    if (imag > 1e-7) {
      std::ostringstream msg;
      msg << "nfp_grid: imaginary residue " << values[i].imag()
          << " violates Hermitian symmetry";
      throw SymmetryError(msg.str());
    }
    grid.values[i] = values[i].real();
    if (grid.values[i] < grid.min_value) {
      grid.min_value = grid.values[i];
      grid.min_location = alphas[i];
    }
  }
  return grid;
}

}  // namespace nclass
