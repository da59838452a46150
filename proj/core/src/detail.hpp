#pragma once

#include <algorithm>
#include <cmath>

#include "henon/dynamics.hpp"

namespace henon::detail {

inline Complex coord(Point2 z, Direction dir) {
  return dir == Direction::forward ? z.y : z.x;
}

inline double max_coord(Point2 z) { return std::max(std::abs(z.x), std::abs(z.y)); }

inline Point2 step(const HenonMap& H, Point2 z, Direction dir) {
  return dir == Direction::forward ? apply(H, z) : apply_inverse(H, z);
}

inline bool in_region(const HenonMap& H, Point2 z, Direction dir) {
  return dir == Direction::forward ? in_v_plus(z, H.radius()) : in_v_minus(z, H.radius());
}

// Largest coordinate modulus from which one full sweep stays below 1e300:
// a sweep from max coordinate s <= guard yields at most (2A)^(2d) * s^d with
// A bounding every factor's coefficient mass, so guard^d * (2A)^(2d) <= 1e300
// suffices. Clamped to [2R + 1, 1e100].
inline double step_guard(const HenonMap& H) {
  double a = 1.0;
  for (const HenonFactor& f : H.factors()) {
    double mass = 1.0 + std::abs(f.b) + std::abs(f.delta) + f.p.lower_l1() + std::abs(f.lead()) +
                  std::abs(Complex{1.0, 0.0} / f.b) + std::abs(Complex{1.0, 0.0} / f.delta);
    a = std::max(a, mass);
  }
  double g = std::pow(10.0, 300.0 / static_cast<double>(H.degree())) / (4.0 * a * a);
  double lo = std::min(2.0 * H.radius() + 1.0, kIterateGuard);
  return std::clamp(g, lo, kIterateGuard);
}

}  // namespace henon::detail
