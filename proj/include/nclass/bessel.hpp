#ifndef NCLASS_BESSEL_HPP
#define NCLASS_BESSEL_HPP

namespace nclass {

// Bessel functions of the first kind, order 0 and 1.
//
// Power series up to |x| = 14, Hankel asymptotic expansion beyond; both
// regimes reach ~1e-12 relative accuracy (the asymptotic-series floor
// e^{-2x} drops below 1e-12 only for x >= 14, which fixes the crossover).
double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace nclass

#endif
