#include "nclass/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nclass/errors.hpp"
#include "nclass/transform.hpp"

namespace nclass {

namespace {

constexpr double k_pi = 3.14159265358979323846;

void check_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("Fock dimension must be >= 1");
}

void hermitize(Eigen::MatrixXcd& m) {
  m = 0.5 * (m + m.adjoint()).eval();
}

double ln_factorial(int n) { return std::lgamma(double(n) + 1.0); }

}  // namespace

bool is_finite(ComplexPoint p) {
  return std::isfinite(p.real()) && std::isfinite(p.imag());
}

double PhotonStatistics::deficit() const {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return std::max(0.0, 1.0 - sum);
}

DensityMatrix make_fock(int n, int dim) {
  check_dim(dim);
  if (n < 0) throw std::invalid_argument("Fock index must be >= 0");
  if (n >= dim) {
    std::ostringstream msg;
    msg << "make_fock: n = " << n << " does not fit dim = " << dim;
    throw std::out_of_range(msg.str());
  }
  DensityMatrix rho;
  rho.elements = Eigen::MatrixXcd::Zero(dim, dim);
  rho.elements(n, n) = 1.0;
  rho.tail_mass = 0.0;
  return rho;
}

DensityMatrix make_coherent(ComplexPoint alpha, int dim, double tail_tol) {
  check_dim(dim);
  if (!is_finite(alpha)) throw std::invalid_argument("coherent amplitude must be finite");
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  const double kept = c.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  if (tail > tail_tol) {
    std::ostringstream msg;
    msg << "make_coherent: tail mass " << tail << " above tolerance " << tail_tol
        << " (|alpha|^2 = " << std::norm(alpha) << ", dim = " << dim << ")";
    throw TruncationError(msg.str());
  }
  DensityMatrix rho;
  rho.elements = (c * c.adjoint()) / kept;
  hermitize(rho.elements);
  rho.tail_mass = tail;
  return rho;
}

DensityMatrix make_thermal(double nbar, int dim, double tail_tol) {
  check_dim(dim);
  if (!(nbar >= 0.0)) throw std::domain_error("make_thermal: nbar must be >= 0");
  DensityMatrix rho;
  rho.elements = Eigen::MatrixXcd::Zero(dim, dim);
  if (nbar == 0.0) {
    rho.elements(0, 0) = 1.0;
    return rho;
  }
  const double x = nbar / (1.0 + nbar);
  const double tail = std::pow(x, dim);
  if (tail > tail_tol) {
    std::ostringstream msg;
    msg << "make_thermal: tail mass " << tail << " above tolerance " << tail_tol;
    throw TruncationError(msg.str());
  }
  double p = 1.0 - x;
  double kept = 0.0;
  for (int n = 0; n < dim; ++n) {
    rho.elements(n, n) = p;
    kept += p;
    p *= x;
  }
  rho.elements /= kept;
  rho.tail_mass = tail;
  return rho;
}

DensityMatrix make_spats(double nbar, double eta, int dim, double tail_tol) {
  if (dim < 2) throw std::invalid_argument("make_spats: dim must be >= 2");
  if (!(nbar >= 0.0)) throw std::domain_error("make_spats: nbar must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("make_spats: eta must lie in [0, 1]");
  // Photon addition on the thermal diagonal: (a^dag rho a)_{nn} = n rho_{n-1,n-1}.
  const double x = nbar / (1.0 + nbar);
  // Exact tail of the untruncated added state above the kept block.
  const double tail =
      x > 0.0 ? std::pow(x, dim - 1) * (dim * (1.0 - x) + x) : 0.0;
  if (tail > tail_tol) {
    std::ostringstream msg;
    msg << "make_spats: tail mass " << tail << " above tolerance " << tail_tol;
    throw TruncationError(msg.str());
  }
  DensityMatrix added;
  added.elements = Eigen::MatrixXcd::Zero(dim, dim);
  double thermal = 1.0 - x;  // unnormalized geometric weights
  double trace = 0.0;
  for (int n = 1; n < dim; ++n) {
    const double v = double(n) * thermal;
    added.elements(n, n) = v;
    trace += v;
    thermal *= x;
  }
  added.elements /= trace;
  added.tail_mass = tail;
  return eta == 1.0 ? added : apply_loss(added, eta);
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts) {
  if (parts.empty()) throw std::invalid_argument("mix: empty mixture");
  const int dim = parts.front().second.dim();
  double total = 0.0;
  for (const auto& [weight, rho] : parts) {
    if (weight < -1e-15) throw std::invalid_argument("mix: negative weight");
    if (rho.dim() != dim) throw std::invalid_argument("mix: dimension mismatch");
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mix: weights must sum to one");
  DensityMatrix out;
  out.elements = Eigen::MatrixXcd::Zero(dim, dim);
  out.tail_mass = 0.0;
  for (const auto& [weight, rho] : parts) {
    out.elements += (weight / total) * rho.elements;
    out.tail_mass += (weight / total) * rho.tail_mass;
  }
  hermitize(out.elements);
  return out;
}

DensityMatrix apply_loss(const DensityMatrix& rho, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("apply_loss: eta must lie in [0, 1]");
  const int dim = rho.dim();
  if (eta == 1.0) return rho;
  DensityMatrix out;
  out.elements = Eigen::MatrixXcd::Zero(dim, dim);
  out.tail_mass = rho.tail_mass;
  if (eta == 0.0) {
    out.elements(0, 0) = 1.0;
    out.tail_mass = 0.0;
    return out;
  }
  std::vector<double> lg(dim + 1);
  for (int i = 0; i <= dim; ++i) lg[i] = ln_factorial(i);
  auto ln_choose = [&](int n, int k) { return lg[n] - lg[k] - lg[n - k]; };
  const double ln_eta = std::log(eta);
  const double ln_loss = std::log1p(-eta);
  bool diagonal = true;
  for (int m = 0; m < dim && diagonal; ++m)
    for (int n = m + 1; n < dim; ++n)
      if (rho.elements(m, n) != Complex(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  for (int m = 0; m < dim; ++m) {
    const int top = diagonal ? m : dim - 1;
    for (int mp = m; mp <= top; ++mp) {
      Complex acc = 0.0;
      for (int k = 0; k + std::max(m, mp) < dim; ++k) {
        const double ln_coef = 0.5 * (ln_choose(m + k, k) + ln_choose(mp + k, k)) +
                               0.5 * (m + mp) * ln_eta + k * ln_loss;
        if (ln_coef < -745.0) continue;
        acc += std::exp(ln_coef) * rho.elements(m + k, mp + k);
      }
      out.elements(m, mp) = acc;
      if (mp != m) out.elements(mp, m) = std::conj(acc);
    }
  }
  hermitize(out.elements);
  out.elements /= out.elements.trace().real();
  return out;
}

DensityMatrix displace_state(const DensityMatrix& rho, ComplexPoint alpha,
                             double tail_tol) {
  if (!is_finite(alpha)) throw std::invalid_argument("displacement must be finite");
  if (alpha == ComplexPoint(0.0, 0.0)) return rho;
  const int dim = rho.dim();
  const Eigen::MatrixXcd d = displacement_matrix(dim, alpha);
  Eigen::MatrixXcd moved = d * rho.elements * d.adjoint();
  hermitize(moved);
  const double trace = moved.trace().real();
  const double leaked = std::max(0.0, 1.0 - trace);
  const double tail = rho.tail_mass + leaked;
  if (tail > tail_tol) {
    std::ostringstream msg;
    msg << "displace_state: tail mass " << tail << " above tolerance " << tail_tol
        << " (|alpha| = " << std::abs(alpha) << ", dim = " << dim << ")";
    throw TruncationError(msg.str());
  }
  DensityMatrix out;
  out.elements = moved / trace;
  out.tail_mass = tail;
  return out;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho) {
  PhotonStatistics stats;
  stats.probs.resize(rho.dim());
  for (int n = 0; n < rho.dim(); ++n) {
    const double p = rho.elements(n, n).real();
    if (p < -1e-12) {
      std::ostringstream msg;
      msg << "photon_statistics: diagonal element " << n << " = " << p
          << " below the -1e-12 roundoff threshold";
      throw NegativityError(msg.str());
    }
    stats.probs[n] = std::max(0.0, p);
  }
  return stats;
}

double mean_photon_number(const DensityMatrix& rho) {
  double m = 0.0;
  for (int n = 1; n < rho.dim(); ++n) m += double(n) * rho.elements(n, n).real();
  return m;
}

void displacement_radial_column(int k, double r, int count,
                                std::vector<double>& out) {
  out.assign(count, 0.0);
  if (count == 0) return;
  const double x = r * r;
  if (r == 0.0) {
    if (k == 0) out.assign(count, 1.0);
    return;
  }
  // R_0 = r^k e^{-r^2/2} / sqrt(k!), evaluated in log space; every later
  // element is a matrix element of a unitary, hence bounded by one.
  out[0] = std::exp(k * std::log(r) - 0.5 * x - 0.5 * ln_factorial(k));
  if (count == 1) return;
  out[1] = out[0] * (1.0 + k - x) / std::sqrt(double(k) + 1.0);
  for (int m = 1; m + 1 < count; ++m) {
    const double a = (2.0 * m + k + 1.0 - x) * out[m];
    const double b = std::sqrt(double(m) * (m + k)) * out[m - 1];
    out[m + 1] = (a - b) / std::sqrt(double(m + 1) * (m + 1 + k));
  }
}

Eigen::MatrixXcd displacement_matrix(int dim, ComplexPoint alpha) {
  check_dim(dim);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
  const double r = std::abs(alpha);
  if (r == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
  const double theta = std::arg(alpha);
  std::vector<double> radial;
  for (int k = 0; k < dim; ++k) {
    displacement_radial_column(k, r, dim - k, radial);
    const Complex up = std::polar(1.0, k * theta);
    const Complex down = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(up);
    for (int m = 0; m + k < dim; ++m) {
      d(m + k, m) = radial[m] * up;
      if (k > 0) d(m, m + k) = radial[m] * down;
    }
  }
  return d;
}

Complex char_function(const DensityMatrix& rho, ComplexPoint beta) {
  if (!is_finite(beta)) throw std::invalid_argument("beta must be finite");
  const double half_sq = 0.5 * std::norm(beta);
  if (half_sq > 700.0) {
    std::ostringstream msg;
    msg << "char_function: |beta| = " << std::abs(beta)
        << " overflows e^{|beta|^2/2}; max usable |beta| is "
        << std::sqrt(1400.0) << " (and ~2 sqrt(dim) = "
        << 2.0 * std::sqrt(double(rho.dim())) << " for reliable truncation)";
    throw RangeError(msg.str());
  }
  const Eigen::MatrixXcd d = displacement_matrix(rho.dim(), beta);
  Complex trace = 0.0;
  for (int m = 0; m < rho.dim(); ++m)
    for (int n = 0; n < rho.dim(); ++n) trace += rho.elements(m, n) * d(n, m);
  return std::exp(half_sq) * trace;
}

namespace {

// Integration radius for the Wigner quadrature: past the classically
// occupied region 2 sqrt(n) the integrand Tr{rho D} dies off Gaussian-fast.
double wigner_radius(const DensityMatrix& rho) {
  double cumulative = 0.0;
  int n_eff = rho.dim() - 1;
  for (int n = 0; n < rho.dim(); ++n) {
    cumulative += std::max(0.0, rho.elements(n, n).real());
    if (cumulative >= 1.0 - 1e-14) {
      n_eff = n;
      break;
    }
  }
  return 2.0 * std::sqrt(double(n_eff) + 1.0) + 8.0;
}

const std::function<Complex(ComplexPoint)> k_unit_weight =
    [](ComplexPoint) { return Complex(1.0, 0.0); };

}  // namespace

double wigner(const DensityMatrix& rho, ComplexPoint alpha,
              const QuadConfig& cfg) {
  const ComplexPoint pts[1] = {alpha};
  const auto values =
      filtered_transform(rho, k_unit_weight, wigner_radius(rho), {}, pts, cfg);
  if (std::abs(values[0].imag()) > 1e-8)
    throw AccuracyError("wigner: imaginary residue above 1e-8",
                        values[0].real());
  return values[0].real();
}

WignerGrid wigner_grid(const DensityMatrix& rho, double half_width, int n,
                       const QuadConfig& cfg) {
  if (n < 1) throw std::invalid_argument("wigner_grid: need n >= 1");
  WignerGrid grid;
  grid.re_axis.resize(n);
  grid.im_axis.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (n - 1);
    grid.re_axis[i] = t;
    grid.im_axis[i] = t;
  }
  std::vector<ComplexPoint> alphas;
  alphas.reserve(std::size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      alphas.emplace_back(grid.re_axis[i], grid.im_axis[j]);
  const auto values =
      filtered_transform(rho, k_unit_weight, wigner_radius(rho), {}, alphas, cfg);
  grid.values.resize(values.size());
  grid.min_value = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i].imag()) > 1e-8)
      throw AccuracyError("wigner_grid: imaginary residue above 1e-8",
                          values[i].real());
    grid.values[i] = values[i].real();
    if (grid.values[i] < grid.min_value) {
      grid.min_value = grid.values[i];
      grid.min_location = alphas[i];
    }
  }
  return grid;
}

}  // namespace nclass
