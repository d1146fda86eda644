#include "nclass/bessel.hpp"

#include <cmath>
#include <limits>

namespace nclass {

namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr double k_series_cut = 14.0;

// J0 = sum_k t_k,          t_0 = 1, t_{k+1} = -t_k q / (k+1)^2
// J1 = (x/2) sum_k t_k,    t_0 = 1, t_{k+1} = -t_k q / ((k+1)(k+2))
// with q = x^2/4. Kahan-compensated; at x = 14 the peak term is ~2e4, so
// roughly three digits are lost to cancellation and ~1e-12 remains.
double series(double x, bool order_one) {
  const double q = 0.25 * x * x;
  double sum = 1.0, comp = 0.0, term = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double denom =
        order_one ? double(k + 1) * double(k + 2) : double(k + 1) * double(k + 1);
    term *= -q / denom;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return order_one ? 0.5 * x * sum : sum;
}

// Hankel expansion J_nu(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (2 nu + 1) pi / 4, summed to the smallest term.
double asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double a = 1.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k < 60; ++k) {
    a *= (mu - double(2 * k - 1) * double(2 * k - 1)) / (double(k) * 8.0 * x);
    if (std::abs(a) >= prev) break;  // asymptotic tail started growing
    prev = std::abs(a);
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * a;
    else
      q += sign * a;
    if (std::abs(a) < 1e-17) break;
  }
  const double chi = x - (2.0 * nu + 1.0) * k_pi / 4.0;
  return std::sqrt(2.0 / (k_pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  return x < k_series_cut ? series(x, false) : asymptotic(x, 0);
}

double bessel_j1(double x) {
  const double ax = std::abs(x);
  const double v = ax < k_series_cut ? series(ax, true) : asymptotic(ax, 1);
  return x < 0.0 ? -v : v;
}

}  // namespace nclass
