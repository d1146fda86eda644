#ifndef NCLASS_QUADRATURE_HPP
#define NCLASS_QUADRATURE_HPP

#include <utility>
#include <vector>

namespace nclass {

// Shared quadrature settings. `radial`/`angular` are the base polar orders;
// rules are doubled up to `max_doublings` times until successive refinements
// differ by less than `tol`.
struct QuadConfig {
  int radial = 128;
  int angular = 256;
  int max_doublings = 3;
  double tol = 1e-7;
};

// Gauss-Legendre rule on [-1, 1]; cached per order, thread safe.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Nodes/weights of the n-point Gauss-Legendre rule mapped onto [a, b].
void gl_nodes(double a, double b, int n, std::vector<double>& x,
              std::vector<double>& w);

// Same, after the substitution x = a + (b-a)(1 - cos phi)/2. Nodes cluster
// quadratically at both endpoints, which restores spectral convergence for
// integrands with algebraic endpoint singularities such as (b-x)^{3/2}.
void gl_nodes_clustered(double a, double b, int n, std::vector<double>& x,
                        std::vector<double>& w);

template <typename F>
double integrate(F&& f, double a, double b, int n) {
  std::vector<double> x, w;
  gl_nodes(a, b, n, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
  return s;
}

template <typename F>
double integrate_clustered(F&& f, double a, double b, int n) {
  std::vector<double> x, w;
  gl_nodes_clustered(a, b, n, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
  return s;
}

}  // namespace nclass

#endif
