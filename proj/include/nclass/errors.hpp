#ifndef NCLASS_ERRORS_HPP
#define NCLASS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nclass {

// Base class for runtime numerical rejections (as opposed to caller-contract
// violations, which use the std::invalid_argument / std::domain_error /
// std::out_of_range family). The CLI maps these to exit code 3.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Truncation tail mass above the configured tolerance.
class TruncationError : public NumericsError {
 public:
  explicit TruncationError(const std::string& msg) : NumericsError(msg) {}
};

// A quadrature failed to self-converge within the doubling budget.
class AccuracyError : public NumericsError {
 public:
  AccuracyError(const std::string& msg, double achieved)
      : NumericsError(msg), achieved_estimate(achieved) {}
  double achieved_estimate;
};

// Hermitian-symmetry certificate failed (imaginary residue too large).
class SymmetryError : public NumericsError {
 public:
  explicit SymmetryError(const std::string& msg) : NumericsError(msg) {}
};

// A quantity that must be nonnegative came out below the roundoff threshold.
class NegativityError : public NumericsError {
 public:
  explicit NegativityError(const std::string& msg) : NumericsError(msg) {}
};

// Argument outside the numerically representable range.
class RangeError : public NumericsError {
 public:
  explicit RangeError(const std::string& msg) : NumericsError(msg) {}
};

}  // namespace nclass

#endif
