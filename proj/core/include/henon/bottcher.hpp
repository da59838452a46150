#pragma once

#include "henon/dynamics.hpp"

namespace henon {

// Truncated telescoping product normalizing the escape coordinate: the value
// approximates the analytic coordinate phi with phi(H(z)) = c * phi(z)^d and
// phi ~ y (forward; x backward). errorBound bounds |Log computed - Log exact|
// (principal logs), certified from the geometric tail of the sub-leading
// coefficient mass.
struct BottcherValue {
  Complex value;
  double errorBound = 0.0;
  int iterations = 0;
  bool toleranceMet = false;
};

// Requires z in V_R^+ (forward) or V_R^- (backward); NotInFiltration
// otherwise. Each step certifies |q(...)/(c coord^d)| < 1 and throws
// BranchDomainViolation when that fails (enlarge R or move z outward).
BottcherValue bottcher(const HenonMap& H, Point2 z, Direction dir, double tol);

// log |phi| + log |c| / (d - 1) on the filtration domain; agrees with
// dynamics green within summed error bounds.
GreenValue green_via_bottcher(const HenonMap& H, Point2 z, Direction dir,
                              double tol = 1e-9);

}  // namespace henon
