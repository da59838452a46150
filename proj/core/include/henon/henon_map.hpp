#pragma once

#include <array>
#include <optional>
#include <vector>

#include "henon/poly.hpp"

namespace henon {

struct Point2 {
  Complex x;
  Complex y;
};

// One factor (x, y) -> (b*y, p(y) - delta*x) with deg(p) >= 2, b*delta != 0.
struct HenonFactor {
  Complex b;
  Complex delta;
  UniPoly p;

  int degree() const { return p.degree(); }
  Complex lead() const { return p.leading(); }
};

// Affine self-map of C^2: z -> M z + t, M invertible.
struct AffineMap {
  std::array<Complex, 4> m{{{1, 0}, {0, 0}, {0, 0}, {1, 0}}};  // a11 a12 a21 a22
  std::array<Complex, 2> t{{{0, 0}, {0, 0}}};

  static AffineMap identity() { return AffineMap{}; }
  Point2 apply(Point2 z) const;
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  bool approx_identity(double tol = 1e-9) const;
};

// Diagonal linear map (x, y) -> (deltaMinus * x, deltaPlus * y).
struct DiagonalMap {
  Complex deltaMinus{1, 0};
  Complex deltaPlus{1, 0};
  Point2 apply(Point2 z) const { return {deltaMinus * z.x, deltaPlus * z.y}; }
};

struct RadiusCounterexample {
  Point2 point;
  Point2 image;
  const char* statement;  // which inclusion failed
};

struct RadiusReport {
  bool passed = false;
  double radius = 0.0;
  int density = 0;
  std::size_t checked = 0;
  std::optional<RadiusCounterexample> counterexample;
};

struct MakeOptions {
  int radius_density = 16;
  int growth_samples = 10000;
  unsigned long long growth_seed = 0;
  std::size_t term_cap = kDefaultTermCap;
};

// Finite composition of factors; index 0 is applied first. Construction
// computes the composite degree, both closed-form leading coefficients, the
// symbolic forward/inverse components (cross-checked against the closed
// forms), a validated filtration radius, and a sampled growth envelope.
class HenonMap {
 public:
  const std::vector<HenonFactor>& factors() const { return factors_; }
  long long degree() const { return d_; }
  // Coefficient of y^d in the second forward component.
  Complex leading() const { return cH_; }
  // Coefficient of x^d in the first inverse component.
  Complex leading_inverse() const { return cHp_; }
  double radius() const { return R_; }
  // Sampled bound (doubled for safety) on |G - log+ |coord|| over the
  // validated shells, both directions.
  double growth_bound() const { return growthC_; }
  const BiPolyPair& forward_components() const { return forward_; }
  const BiPolyPair& inverse_components() const { return inverse_; }
  // l1 coefficient mass of the sub-leading part of the second forward
  // component (resp. first inverse component).
  double q_l1() const { return qL1_; }
  double qp_l1() const { return qpL1_; }

 private:
  HenonMap() = default;
  friend HenonMap make_henon(std::vector<HenonFactor>, const MakeOptions&);

  std::vector<HenonFactor> factors_;
  long long d_ = 0;
  Complex cH_;
  Complex cHp_;
  double R_ = 0.0;
  double growthC_ = 0.0;
  BiPolyPair forward_;
  BiPolyPair inverse_;
  double qL1_ = 0.0;
  double qpL1_ = 0.0;
};

// Validates factors (InvalidFactor), cross-checks closed-form leading
// coefficients against the symbolic expansion (CoefficientMismatch), searches
// a validated radius by doubling from the coefficient-derived start
// (RadiusSearchFailed past 2^20), and samples the growth envelope.
HenonMap make_henon(std::vector<HenonFactor> factors, const MakeOptions& opts = {});

// One forward (resp. inverse) sweep through all factors. Throws Overflow when
// any intermediate coordinate modulus exceeds 1e300.
Point2 apply(const HenonMap& H, Point2 z);
Point2 apply_inverse(const HenonMap& H, Point2 z);

// Coefficient form of the full composition (resp. of its inverse).
const BiPolyPair& symbolic_components(const HenonMap& H);
const BiPolyPair& symbolic_inverse_components(const HenonMap& H);

// Samples density^2 points on each boundary shell |y| in {R, 2R, 4R},
// |x| <= |y| (mirror shells for the inverse direction) and checks the four
// filtration inclusions. Reports the first counterexample.
RadiusReport validate_radius(const HenonMap& H, double R, int density);

// The inverse composition, re-expressed in factor form through the coordinate
// swap (x, y) -> (y, x): green/classify forward on the result at (y, x)
// matches the backward direction on H at (x, y).
HenonMap inverse_as_henon(const HenonMap& H, const MakeOptions& opts = {});

// Filtration membership predicates (strict set definitions).
bool in_v_plus(Point2 z, double R);
bool in_v_minus(Point2 z, double R);

double norm2(Point2 z);

}  // namespace henon
