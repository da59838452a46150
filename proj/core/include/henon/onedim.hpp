#pragma once

#include <optional>

#include "henon/dynamics.hpp"

namespace henon {

// One-variable polynomial map with a certified escape radius:
// |p(z)| >= 2|z| whenever |z| >= escapeRadius.
class PolyMap1D {
 public:
  // Requires deg(p) >= 2 (InvalidFactor otherwise). The radius
  // max(2, (2 + sum of lower coefficient moduli) / |lead|) is certified by
  // sampling the circle |z| = escapeRadius.
  explicit PolyMap1D(UniPoly p);

  const UniPoly& p() const { return p_; }
  int degree() const { return p_.degree(); }
  Complex lead() const { return p_.leading(); }
  double escape_radius() const { return escapeRadius_; }
  double lower_l1() const { return lowerL1_; }
  Complex eval(Complex z) const { return p_.eval(z); }

 private:
  UniPoly p_;
  double escapeRadius_ = 2.0;
  double lowerL1_ = 0.0;
};

// Escaping(n) as soon as |iterate| >= escapeRadius (n = 0 is z itself).
Classification classify_1d(const PolyMap1D& P, Complex z, int maxIter);

// d^{-n} log |P^n(z)| with a geometric tail bound
// d^{-n}/(d-1) * (|log|lead|| + observed log(1+u) envelope); value 0 on
// BoundedSoFar. toleranceMet mirrors the two-variable convention.
GreenValue green_1d(const PolyMap1D& P, Complex z, double tol, int maxIter = 256);

struct Affine1D {
  Complex a{1, 0};
  Complex b{0, 0};
};

// Solves P o Q = sigma o Q o P for sigma(z) = a z + b with |a| = 1: a from
// the leading coefficient ratio, b from the constant term, every coefficient
// verified within 1e-9 * (1 + largest coefficient modulus).
std::optional<Affine1D> beardon_sigma(const PolyMap1D& P, const PolyMap1D& Q);

}  // namespace henon
