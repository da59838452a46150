#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace henon {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial expression text. Carries the byte offset of the
// offending character and a description of what was expected there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, std::string found)
      : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected +
              ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'")),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

// A `y^-k` style exponent in a polynomial expression.
class NegativeExponent : public Error {
 public:
  explicit NegativeExponent(std::size_t position)
      : Error("negative exponent at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// An intermediate value exceeded the evaluation guard (modulus 1e300).
class Overflow : public Error {
 public:
  Overflow() : Error("intermediate value exceeded modulus 1e300") {}
  using Error::Error;
};

// A symbolic operation would produce more terms than the configured cap.
class TermExplosion : public Error {
 public:
  using Error::Error;
};

// A factor violates deg(p) >= 2 or b*delta != 0, or a one-variable map
// violates its degree requirement.
class InvalidFactor : public Error {
 public:
  using Error::Error;
};

// Closed-form leading coefficients disagree with the symbolic expansion.
// Signals an implementation bug, not a user error.
class CoefficientMismatch : public Error {
 public:
  using Error::Error;
};

// No filtration radius up to 2^20 passed validation.
class RadiusSearchFailed : public Error {
 public:
  using Error::Error;
};

// The per-step branch condition |q(x_n,y_n) / (c y_n^d)| < 1 failed.
// The caller must enlarge the filtration radius or move the point outward.
class BranchDomainViolation : public Error {
 public:
  using Error::Error;
};

// A point handed to a coordinate evaluation lies outside V_R^+/V_R^-.
class NotInFiltration : public Error {
 public:
  using Error::Error;
};

}  // namespace henon
