#include "nclass/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nclass/errors.hpp"
#include "nclass/parallel.hpp"

namespace nclass {

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

DisplacedTraceTable::DisplacedTraceTable(const DensityMatrix& rho,
                                         std::span<const double> radii) {
  const int dim = rho.dim();
  for (int k = 0; k < dim; ++k) {
    bool occupied = false;
    for (int m = 0; m + k < dim; ++m)
      if (rho.elements(m, m + k) != Complex(0.0, 0.0)) {
        occupied = true;
        break;
      }
    if (occupied) offsets_.push_back(k);
  }
  coef_.resize(radii.size());
  std::vector<double> radial;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    coef_[i].resize(offsets_.size());
    for (std::size_t j = 0; j < offsets_.size(); ++j) {
      const int k = offsets_[j];
      displacement_radial_column(k, radii[i], dim - k, radial);
      Complex acc = 0.0;
      for (int m = 0; m + k < dim; ++m)
        acc += rho.elements(m, m + k) * radial[m];
      coef_[i][j] = acc;
    }
  }
}

Complex DisplacedTraceTable::eval(std::size_t radius_index,
                                  double theta) const {
  const auto& c = coef_[radius_index];
  Complex sum = 0.0;
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    const int k = offsets_[j];
    if (k == 0) {
      sum += c[j];
      continue;
    }
    // rho_{m,m+k} pairs with D_{m+k,m} ~ e^{ik theta}; the mirrored offset
    // contributes the Hermitian partner (-1)^k conj(c) e^{-ik theta}.
    const Complex up = std::polar(1.0, k * theta);
    sum += c[j] * up;
    sum += (k % 2 == 0 ? 1.0 : -1.0) * std::conj(c[j] * up);
  }
  return sum;
}

std::vector<Complex> filtered_transform(
    const DensityMatrix& rho, const std::function<Complex(ComplexPoint)>& u,
    double radius, std::span<const double> breakpoints,
    std::span<const ComplexPoint> alphas, const QuadConfig& cfg) {
  // radial segments split at interior breakpoints (filter support edges)
  std::vector<double> edges{0.0};
  for (double b : breakpoints)
    if (b > 1e-12 && b < radius - 1e-12) edges.push_back(b);
  edges.push_back(radius);
  std::sort(edges.begin(), edges.end());

  std::vector<Complex> previous;
  double achieved = std::numeric_limits<double>::max();
  for (int level = 0; level <= cfg.max_doublings; ++level) {
    const int n_radial = cfg.radial << level;
    const int n_angular = cfg.angular << level;

    std::vector<double> r, wr;
    {
      std::vector<double> seg_x, seg_w;
      for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        gl_nodes_clustered(edges[s], edges[s + 1], n_radial, seg_x, seg_w);
        r.insert(r.end(), seg_x.begin(), seg_x.end());
        wr.insert(wr.end(), seg_w.begin(), seg_w.end());
      }
    }
    const DisplacedTraceTable table(rho, r);
    const double dtheta = 2.0 * k_pi / n_angular;

    // alpha-independent node weights: wr * r * dtheta * Tr{rho D} * u
    std::vector<Complex> node_weight;
    std::vector<double> node_re, node_im;
    node_weight.reserve(r.size() * n_angular);
    node_re.reserve(r.size() * n_angular);
    node_im.reserve(r.size() * n_angular);
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (int j = 0; j < n_angular; ++j) {
        const double theta = dtheta * j;
        const ComplexPoint beta = std::polar(r[i], theta);
        node_weight.push_back(wr[i] * r[i] * dtheta * table.eval(i, theta) *
                              u(beta));
        node_re.push_back(beta.real());
        node_im.push_back(beta.imag());
      }
    }

    std::vector<Complex> current(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t a) {
      const double are = alphas[a].real(), aim = alphas[a].imag();
      Complex sum = 0.0;
      for (std::size_t p = 0; p < node_weight.size(); ++p) {
        // e^{alpha beta* - alpha* beta} = e^{2i Im(alpha beta*)}
        const double phase = 2.0 * (aim * node_re[p] - are * node_im[p]);
        sum += node_weight[p] * std::polar(1.0, phase);
      }
      current[a] = sum / (k_pi * k_pi);
    });

    if (level > 0) {
      double delta = 0.0;
      for (std::size_t a = 0; a < alphas.size(); ++a)
        delta = std::max(delta, std::abs(current[a] - previous[a]));
      achieved = delta;
      if (delta <= cfg.tol) return current;
    }
    previous = std::move(current);
  }
  throw AccuracyError("filtered_transform: no self-convergence within doubling budget",
                      achieved);
}

}  // namespace nclass
