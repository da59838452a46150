#pragma once

#include "henon/henon_map.hpp"

namespace henon {

enum class Direction { forward, backward };

inline constexpr double kIterateGuard = 1e100;

// Escaping(n): the n-th iterate (n = 0 is the point itself) lies in V_R^+
// (forward) or V_R^- (backward), which certifies escape. BoundedSoFar(N):
// undecided after N iterations, treated as non-escaping at this resolution.
struct Classification {
  bool escaping = false;
  int iterations = 0;
};

Classification classify(const HenonMap& H, Point2 z, Direction dir, int maxIter);

// value approximates d^{-n} log |coord of the n-th iterate| at the stopping
// index. errorBound is the declared tail model 2 * growthC * d^{-n}
// (growthC * d^{-maxIter} for undecided points, where value is 0).
// toleranceMet records whether the bound reached the requested tolerance
// before the iterate guard fired; the value itself converges far faster than
// the certified bound, so it is reported either way.
struct GreenValue {
  double value = 0.0;
  double errorBound = 0.0;
  int iterations = 0;
  bool escaped = false;
  bool toleranceMet = false;
};

// Requires tol >= 1e-12, maxIter >= 1.
GreenValue green(const HenonMap& H, Point2 z, Direction dir, double tol, int maxIter);

// Sampled max over the validated shells of |G - log+ |y|| (forward; |x|
// backward), doubled for safety. Requires samples >= 100. This estimator
// with seed 0 produces the growth bound stored by make_henon.
double growth_constant(const HenonMap& H, Direction dir, int samples,
                       unsigned long long seed = 0);

// Same sampled max (not doubled) over a single shell |coord| = shellRadius.
double shell_gap_max(const HenonMap& H, Direction dir, double shellRadius, int samples,
                     unsigned long long seed = 0);

}  // namespace henon
