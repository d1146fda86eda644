#include "nclass/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "nclass/bessel.hpp"
#include "nclass/errors.hpp"
#include "nclass/quadrature.hpp"

namespace nclass {

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

FilterKernel disc_kernel() {
  FilterKernel k;
  k.radial = [](double r) { return r < 0.5 ? 1.0 : 0.0; };
  k.support_radius = 0.5;
  k.indicator = true;
  return k;
}

FilterKernel quartic_reference_kernel() {
  FilterKernel k;
  // The generous cutoff keeps the far autocorrelation tail (down to ~1e-200)
  // representable; the integrability diagnostic weighs it by e^{|beta|^2/2}.
  k.radial = [](double r) { return std::exp(-r * r * r * r); };
  k.support_radius = 3.8;
  k.indicator = false;
  return k;
}

double disc_autocorrelation(double s) {
  s = std::abs(s);
  if (s >= 1.0) return 0.0;
  return 0.5 * std::acos(s) - 0.5 * s * std::sqrt(1.0 - s * s);
}

namespace {

// Overlap of two discs of radius R with centers separated by s, as a radial
// integral: a full circle of angles contributes for r < R - s, an arc of
// angle 2 pi - 2 arccos(u) for the rest, u = (R^2 - r^2 - s^2)/(2 r s).
double autocorr_indicator(double R, double s, int order) {
  if (s >= 2.0 * R) return 0.0;
  if (s == 0.0) return k_pi * R * R;
  double total = s < R ? k_pi * (R - s) * (R - s) : 0.0;
  const double lo = std::abs(R - s), hi = R;
  total += integrate_clustered(
      [&](double r) {
        const double u =
            std::clamp((R * R - r * r - s * s) / (2.0 * r * s), -1.0, 1.0);
        return r * (2.0 * k_pi - 2.0 * std::acos(u));
      },
      lo, hi, order);
  return total;
}

double autocorr_smooth(const FilterKernel& kernel, double s, int n_radial,
                       int n_angular) {
  std::vector<double> r, wr;
  gl_nodes_clustered(0.0, kernel.support_radius, n_radial, r, wr);
  const double dtheta = 2.0 * k_pi / n_angular;
  double total = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double inner = 0.0;
    for (int j = 0; j < n_angular; ++j) {
      const double c = std::cos(dtheta * j);
      const double d = std::sqrt(r[i] * r[i] + s * s + 2.0 * r[i] * s * c);
      inner += kernel.radial(d);
    }
    total += wr[i] * r[i] * kernel.radial(r[i]) * inner * dtheta;
  }
  return total;
}

}  // namespace

double autocorrelate(const FilterKernel& kernel, ComplexPoint beta,
                     const AutocorrConfig& cfg) {
  if (!is_finite(beta)) throw std::invalid_argument("beta must be finite");
  const double s = std::abs(beta);
  if (s >= 2.0 * kernel.support_radius && kernel.indicator) return 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::max();
  for (int level = 0; level <= cfg.max_doublings; ++level) {
    const double value =
        kernel.indicator
            ? autocorr_indicator(kernel.support_radius, s, cfg.radial << level)
            : autocorr_smooth(kernel, s, cfg.radial << level,
                              cfg.angular << level);
    if (level > 0) {
      delta = std::abs(value - prev);
      if (delta <= cfg.tol) return value;
    }
    prev = value;
  }
  throw AccuracyError("autocorrelate: no self-convergence within doubling budget",
                      prev);
}

FilterFamily disc_family(bool normalized) {
  const double scale = normalized ? 4.0 / k_pi : 1.0;
  FilterFamily f;
  f.eval = [scale](ComplexPoint beta, double w) {
    return Complex(scale * disc_autocorrelation(std::abs(beta) / w), 0.0);
  };
  f.support = [](double w) { return w; };
  f.breakpoints = [](double) { return std::vector<double>{}; };
  f.normalized = normalized;
  f.pure_scaling = true;
  return f;
}

namespace {

// Radial samples with cubic (Catmull-Rom) interpolation; values vanish
// beyond the sampled range. Profiles are even in s, so the left ghost point
// mirrors across the origin.
struct RadialTable {
  std::vector<double> values;
  double step = 0.0;
  double radius = 0.0;

  double operator()(double s) const {
    s = std::abs(s);
    if (s >= radius) return 0.0;
    const double t = s / step;
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(t), values.size() - 2);
    const double u = t - double(i);
    const double y0 = i > 0 ? values[i - 1] : values[1];
    const double y1 = values[i];
    const double y2 = values[i + 1];
    const double y3 =
        i + 2 < values.size() ? values[i + 2] : 2.0 * values[i + 1] - values[i];
    const double a = 0.5 * (-y0 + 3.0 * y1 - 3.0 * y2 + y3);
    const double b = 0.5 * (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3);
    const double c = 0.5 * (y2 - y0);
    return ((a * u + b) * u + c) * u + y1;
  }
};

}  // namespace

FilterFamily autocorrelation_family(const FilterKernel& kernel, bool normalize,
                                    const AutocorrConfig& cfg) {
  auto table = std::make_shared<RadialTable>();
  table->radius = 2.0 * kernel.support_radius;
  const std::size_t samples = 6144;
  table->step = table->radius / double(samples - 1);
  table->values.resize(samples);
  for (std::size_t i = 0; i < samples; ++i)
    table->values[i] = autocorrelate(kernel, Complex(table->step * i, 0.0), cfg);
  if (normalize) {
    const double zero = table->values[0];
    for (double& v : table->values) v /= zero;
  }
  FilterFamily f;
  f.eval = [table](ComplexPoint beta, double w) {
    return Complex((*table)(std::abs(beta) / w), 0.0);
  };
  f.support = [radius = table->radius](double w) { return radius * w; };
  f.breakpoints = [](double) { return std::vector<double>{}; };
  f.normalized = normalize;
  f.pure_scaling = true;
  return f;
}

FilterFamily quartic_reference_family() {
  // The radial table is expensive to fill; build it once and share.
  static const FilterFamily cached =
      autocorrelation_family(quartic_reference_kernel(), true,
                             AutocorrConfig{96, 96, 3, 1e-10});
  return cached;
}

FilterFamily scale_width(const FilterFamily& family, double factor) {
  if (!(factor > 0.0))
    throw std::domain_error("scale_width: factor must be > 0");
  FilterFamily f;
  f.eval = [inner = family.eval, factor](ComplexPoint beta, double w) {
    return inner(beta, factor * w);
  };
  f.support = [inner = family.support, factor](double w) {
    return inner(factor * w);
  };
  f.breakpoints = [inner = family.breakpoints, factor](double w) {
    return inner(factor * w);
  };
  f.normalized = family.normalized;
  f.pure_scaling = family.pure_scaling;
  return f;
}

WitnessCharFn disc_witness_char_fn() {
  WitnessCharFn phi;
  phi.eval = [](ComplexPoint beta) {
    return Complex(disc_autocorrelation(std::abs(beta)) * 4.0 / k_pi, 0.0);
  };
  phi.support_radius = 1.0;
  return phi;
}

double witness_filter_weight(double w) {
  return std::exp(-(w - 1.0) * (w - 1.0));
}

double witness_filter_gaussian_exponent(double w) {
  return std::max(1.0 - 1.0 / (w * w), 0.0);
}

Complex filter_from_witness(const WitnessCharFn& phi_q,
                            const FilterFamily& reference, double w,
                            ComplexPoint beta) {
  if (!(w >= 1.0))
    throw std::domain_error(
        "filter_from_witness: construction is defined for w >= 1");
  const double f = witness_filter_weight(w);
  const double g = witness_filter_gaussian_exponent(w);
  const Complex first =
      f * phi_q.eval(beta / w) * std::exp(-0.5 * g * std::norm(beta));
  if (f == 1.0) return first;  // exact pass-through at w = 1
  return first + (1.0 - f) * reference.eval(beta, w);
}

FilterFamily witness_filter_family(const WitnessCharFn& phi_q,
                                   const FilterFamily& reference) {
  FilterFamily f;
  f.eval = [phi_q, reference](ComplexPoint beta, double w) {
    return filter_from_witness(phi_q, reference, w, beta);
  };
  f.support = [phi = phi_q.support_radius, ref = reference.support](double w) {
    return std::max(phi * w, ref(w));
  };
  f.breakpoints = [phi = phi_q.support_radius,
                   ref = reference.breakpoints](double w) {
    std::vector<double> breaks = ref(w);
    breaks.push_back(phi * w);  // edge of the witness term's support
    return breaks;
  };
  f.normalized =
      std::abs(phi_q.eval(Complex(0.0, 0.0)) - 1.0) < 1e-12 && reference.normalized;
  f.pure_scaling = false;
  return f;
}

namespace {

// Sampled 2D Fourier transform of a phase-independent family,
// (1/pi^2) int Omega_w(beta) e^{alpha beta* - alpha* beta} d^2 beta
//   = (2/pi) int_0^S Re Omega_w(r) J0(2 a r) r dr.
double sampled_transform(const FilterFamily& family, double w, double a,
                         std::span<const double> edges, int order) {
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    total += integrate_clustered(
        [&](double r) {
          return family.eval(Complex(r, 0.0), w).real() * bessel_j0(2.0 * a * r) * r;
        },
        edges[s], edges[s + 1], order);
  }
  return total * 2.0 / k_pi;
}

}  // namespace

std::vector<ConditionReport> verify_filter_conditions(
    const FilterFamily& family, std::span<const double> widths,
    const ConditionCheckConfig& cfg) {
  std::vector<ConditionReport> reports;
  if (widths.empty()) return reports;

  // C3 limit: at fixed beta the values must approach the large-width limit
  // monotonically along the given widths.
  std::vector<double> sorted(widths.begin(), widths.end());
  std::sort(sorted.begin(), sorted.end());
  bool limit_pass = true;
  const double w_probe = 4.0 * sorted.back();
  for (double b : {0.3, 0.7, 1.3}) {
    const double limit = family.eval(Complex(b, 0.0), w_probe).real();
    double prev_gap = std::numeric_limits<double>::max();
    for (double w : sorted) {
      const double gap = std::abs(family.eval(Complex(b, 0.0), w).real() - limit);
      if (gap > prev_gap + 1e-9) {
        limit_pass = false;
        break;
      }
      prev_gap = gap;
    }
    if (!limit_pass) break;
  }

  for (double w : widths) {
    ConditionReport rep;
    rep.w = w;
    rep.value_at_zero = family.eval(Complex(0.0, 0.0), w).real();
    rep.c3_normalized = std::abs(rep.value_at_zero - 1.0) <= 1e-9;
    rep.c3_limit_pass = limit_pass;

    const double radius = family.support(w);
    std::vector<double> edges{0.0};
    for (double b : family.breakpoints(w))
      if (b > 1e-12 && b < radius - 1e-12) edges.push_back(b);
    edges.push_back(radius);
    std::sort(edges.begin(), edges.end());

    double min_ft = std::numeric_limits<double>::max();
    for (int i = 0; i < cfg.alpha_samples; ++i) {
      const double a = cfg.alpha_max * double(i) / double(cfg.alpha_samples - 1);
      min_ft = std::min(min_ft,
                        sampled_transform(family, w, a, edges, cfg.radial_order));
    }
    rep.c2_min = min_ft;
    rep.c2_pass = min_ft >= -cfg.c2_tol;

    // C1 proxy: ln(|Omega_w| e^{|beta|^2/2}) sampled out to min(support, 8w).
    // The profile may have several humps (the weighted reference term rises
    // to ~e^{w^4/2} before its quartic decay takes over), so the sampled
    // evidence is: monotone decay over the last quarter of the range, and a
    // tail below 1e-6 of the sampled peak. True integrability is not machine
    // checkable; this is honest sampled evidence, no more.
    const double r_max = std::min(radius, 8.0 * w);
    std::vector<double> log_h(cfg.decay_samples);
    int peak_at = 0;
    for (int i = 0; i < cfg.decay_samples; ++i) {
      const double r = r_max * double(i + 1) / double(cfg.decay_samples);
      const double mag = std::abs(family.eval(Complex(r, 0.0), w));
      log_h[i] = mag > 0.0 ? std::log(mag) + 0.5 * r * r
                           : -std::numeric_limits<double>::infinity();
      if (log_h[i] > log_h[peak_at]) peak_at = i;
    }
    bool decays = true;
    for (int i = (3 * cfg.decay_samples) / 4; i < cfg.decay_samples; ++i) {
      if (std::isinf(log_h[i]) && std::isinf(log_h[i - 1])) continue;
      if (log_h[i] > log_h[i - 1] + 1e-9) decays = false;
    }
    const bool support_covered =
        std::isinf(log_h[cfg.decay_samples - 1]) && radius <= 8.0 * w + 1e-9;
    if (std::isinf(log_h[peak_at]) || support_covered) {
      // the profile vanishes inside the sampled range: compact support
      rep.c1_tail_over_peak = 0.0;
      rep.c1_pass = true;
    } else {
      const double log_ratio = log_h[cfg.decay_samples - 1] - log_h[peak_at];
      rep.c1_tail_over_peak = std::exp(std::min(log_ratio, 0.0));
      rep.c1_pass = decays && rep.c1_tail_over_peak < 1e-6;
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace nclass
