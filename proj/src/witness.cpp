#include "nclass/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nclass/bessel.hpp"
#include "nclass/errors.hpp"
#include "nclass/filters.hpp"
#include "nclass/parallel.hpp"
#include "nclass/quadrature.hpp"
#include "nclass/transform.hpp"

namespace nclass {

namespace {

constexpr double k_pi = 3.14159265358979323846;

void check_width(double w) {
  if (!(w > 0.0)) throw std::domain_error("witness width w must be > 0");
}

// Alternating series with the term-ratio recurrence. Returns false when the
// tracked roundoff (peak |term| * eps * terms) exceeds the 1e-12 budget and
// the caller must fall back to the radial integral.
bool witness_diag_series(int n, double w, double& out) {
  const double q = 0.25 * w * w;
  double term = 1.0, sum = 1.0, comp = 0.0, peak = 1.0;
  for (int m = 1; m <= n; ++m) {
    term *= -q * (2.0 * m + 1.0) * (2.0 * m + 2.0) * (n - m + 1.0) /
            (double(m) * (m + 2.0) * (m + 1.0) * (m + 1.0));
    peak = std::max(peak, std::abs(term));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  out = (w * w / 16.0) * sum;
  if (!std::isfinite(out)) return false;
  const double roundoff =
      peak * std::numeric_limits<double>::epsilon() * double(n + 1);
  return roundoff <= std::max(1e-12, 1e-10 * std::abs(out));
}

// (2/pi) int_0^w Omega_1(r/w) L_n(r^2) r dr for all n < count at a fixed
// node set; one forward Laguerre sweep over all n amortizes the cost.
std::vector<double> diag_table_at_order(int count, double w, int order) {
  std::vector<double> r, wr;
  gl_nodes_clustered(0.0, w, order, r, wr);
  const std::size_t m = r.size();
  std::vector<double> weight(m), x(m);
  for (std::size_t i = 0; i < m; ++i) {
    weight[i] = (2.0 / k_pi) * wr[i] * r[i] * disc_autocorrelation(r[i] / w);
    x[i] = r[i] * r[i];
  }
  std::vector<double> out(count, 0.0);
  std::vector<double> prev(m, 1.0), curr(m), next(m);
  for (std::size_t i = 0; i < m; ++i) out[0] += weight[i] * prev[i];
  if (count == 1) return out;
  for (std::size_t i = 0; i < m; ++i) {
    curr[i] = 1.0 - x[i];
    out[1] += weight[i] * curr[i];
  }
  for (int n = 1; n + 1 < count; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = ((2.0 * n + 1.0 - x[i]) * curr[i] - double(n) * prev[i]) /
                double(n + 1);
      acc += weight[i] * next[i];
    }
    out[n + 1] = acc;
    prev.swap(curr);
    curr.swap(next);
  }
  return out;
}

}  // namespace

std::vector<double> witness_diag_table(int count, double w) {
  check_width(w);
  if (count < 1) throw std::invalid_argument("witness_diag_table: count must be >= 1");
  // Base order tracks the oscillation count of L_n(r^2) over [0, w]. The
  // convergence gate sits above the roundoff floor of the Laguerre sums,
  // whose integrand amplitude grows like e^{w^2/2}.
  int order = 96 + static_cast<int>(std::ceil(1.8 * w * std::sqrt(double(count))));
  const double gate = std::max(1e-11, 1e-17 * std::exp(0.5 * w * w));
  std::vector<double> prev = diag_table_at_order(count, w, order);
  double delta = std::numeric_limits<double>::max();
  for (int level = 0; level < 3; ++level) {
    order *= 2;
    std::vector<double> curr = diag_table_at_order(count, w, order);
    delta = 0.0;
    for (int n = 0; n < count; ++n)
      delta = std::max(delta, std::abs(curr[n] - prev[n]));
    if (delta <= gate) return curr;
    prev = std::move(curr);
  }
  throw AccuracyError("witness_diag_table: radial rule did not self-converge",
                      delta);
}

double witness_diag(int n, double w) {
  check_width(w);
  if (n < 0) throw std::invalid_argument("witness_diag: n must be >= 0");
  // Past w^2 n ~ 400 the series peak alone guarantees catastrophic
  // cancellation; skip the attempt.
  if (w * w * n <= 400.0) {
    double value = 0.0;
    if (witness_diag_series(n, w, value)) return value;
  }
  return witness_diag_table(n + 1, w).back();
}

double witness_coherent_closed_form(double r, double w) {
  check_width(w);
  if (!(r >= 0.0))
    throw std::invalid_argument("witness_coherent_closed_form: r must be >= 0");
  if (r < 1e-8) return w * w / 16.0;
  const double j = bessel_j1(w * r);
  return j * j / (4.0 * r * r);
}

double witness_trace(double w, int dim) {
  check_width(w);
  if (dim < 1) throw std::invalid_argument("witness_trace: dim must be >= 1");
  const std::vector<double> table = witness_diag_table(dim, w);
  double sum = 0.0, comp = 0.0;
  for (double v : table) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  // Normalize the filter to one at the origin (the disc convention carries
  // Omega(0) = pi/4); only then does the trace converge to 1/pi.
  return sum * 4.0 / k_pi;
}

namespace {

ExpectationReport expectation_from_stats(const PhotonStatistics& stats,
                                         double tail_mass, double w) {
  const int dim = static_cast<int>(stats.probs.size());
  const std::vector<double> table = witness_diag_table(4 * dim, w);
  ExpectationReport rep;
  double sum = 0.0, comp = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double y = table[n] * stats.probs[n] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  rep.value = sum;
  double envelope = 0.0;
  for (int n = dim; n < 4 * dim; ++n)
    envelope = std::max(envelope, std::abs(table[n]));
  rep.truncation_bound = envelope * tail_mass;
  rep.terms_used = dim;
  rep.dim_used = dim;
  rep.sign_certified = std::abs(rep.value) > rep.truncation_bound;
  return rep;
}

}  // namespace

ExpectationReport expectation(const DensityMatrix& rho, const WitnessSpec& spec) {
  check_width(spec.w);
  if (!is_finite(spec.alpha))
    throw std::invalid_argument("expectation: witness displacement must be finite");
  const DensityMatrix displaced =
      spec.alpha == ComplexPoint(0.0, 0.0) ? rho : displace_state(rho, -spec.alpha);
  return expectation_from_stats(photon_statistics(displaced),
                                displaced.tail_mass, spec.w);
}

WidthScanResult scan_width(const DensityMatrix& rho, ComplexPoint alpha,
                           std::span<const double> w_grid) {
  if (w_grid.empty()) throw std::invalid_argument("scan_width: empty width grid");
  for (std::size_t i = 0; i < w_grid.size(); ++i) {
    if (!(w_grid[i] > 0.0))
      throw std::domain_error("scan_width: widths must be positive");
    if (i > 0 && !(w_grid[i] > w_grid[i - 1]))
      throw std::invalid_argument("scan_width: width grid must be strictly increasing");
  }
  const DensityMatrix displaced =
      alpha == ComplexPoint(0.0, 0.0) ? rho : displace_state(rho, -alpha);
  const PhotonStatistics stats = photon_statistics(displaced);

  WidthScanResult result;
  result.points.resize(w_grid.size());
  parallel_for(w_grid.size(), [&](std::size_t i) {
    result.points[i] = {w_grid[i],
                        expectation_from_stats(stats, displaced.tail_mass, w_grid[i])};
  });

  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    const ExpectationReport& a = result.points[i].report;
    const ExpectationReport& b = result.points[i + 1].report;
    if (a.value > a.truncation_bound && b.value < -b.truncation_bound) {
      double lo = result.points[i].w, hi = result.points[i + 1].w;
      while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        const double v =
            expectation_from_stats(stats, displaced.tail_mass, mid).value;
        (v > 0.0 ? lo : hi) = mid;
      }
      result.detected = true;
      result.w_star = 0.5 * (lo + hi);
      break;
    }
  }
  return result;
}

double mandel_q(const DensityMatrix& rho) {
  double m1 = 0.0, m2 = 0.0;
  for (int n = 1; n < rho.dim(); ++n) {
    const double p = rho.elements(n, n).real();
    m1 += double(n) * p;
    m2 += double(n) * double(n) * p;
  }
  if (m1 <= 0.0)
    throw std::domain_error("mandel_q: undefined for zero mean photon number");
  return (m2 - m1 * m1 - m1) / m1;
}

double quadrature_variance(const DensityMatrix& rho, double phase) {
  const int dim = rho.dim();
  Complex a_mean = 0.0, a2_mean = 0.0;
  double n_mean = 0.0;
  for (int m = 0; m < dim; ++m) {
    if (m + 1 < dim)
      a_mean += rho.elements(m, m + 1) * std::sqrt(double(m + 1));
    if (m + 2 < dim)
      a2_mean += rho.elements(m, m + 2) *
                 std::sqrt(double(m + 1) * double(m + 2));
    n_mean += double(m) * rho.elements(m, m).real();
  }
  const Complex rot = std::polar(1.0, -phase);
  const double x_mean = 2.0 * (rot * a_mean).real();
  const double x2_mean = 1.0 + 2.0 * n_mean + 2.0 * (rot * rot * a2_mean).real();
  return x2_mean - x_mean * x_mean;
}

FirstOrderTestResult first_order_char_test(const DensityMatrix& rho,
                                           const FirstOrderGridConfig& cfg) {
  if (!(cfg.beta_max > 0.0) || cfg.beta_max > 37.0)
    throw std::invalid_argument("first_order_char_test: beta_max out of range");
  std::vector<double> radii(cfg.radial + 1);
  for (int i = 0; i <= cfg.radial; ++i)
    radii[i] = cfg.beta_max * double(i) / double(cfg.radial);
  const DisplacedTraceTable table(rho, radii);
  FirstOrderTestResult result;
  result.max_modulus = 0.0;
  for (int i = 0; i <= cfg.radial; ++i) {
    const double growth = std::exp(0.5 * radii[i] * radii[i]);
    const int n_angles = i == 0 ? 1 : cfg.angular;
    for (int j = 0; j < n_angles; ++j) {
      const double theta = 2.0 * k_pi * j / cfg.angular;
      const double mod = growth * std::abs(table.eval(i, theta));
      if (mod > result.max_modulus) {
        result.max_modulus = mod;
        result.argmax = std::polar(radii[i], theta);
      }
    }
  }
  result.witnessed = result.max_modulus > 1.0 + 1e-9;
  return result;
}

}  // namespace nclass
