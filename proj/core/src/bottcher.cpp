#include "henon/bottcher.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail.hpp"
#include "henon/errors.hpp"

namespace henon {

BottcherValue bottcher(const HenonMap& H, Point2 z, Direction dir, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bottcher: tol must be positive");
  const bool fwd = dir == Direction::forward;
  if (!(fwd ? in_v_plus(z, H.radius()) : in_v_minus(z, H.radius())))
    throw NotInFiltration(fwd ? "point outside V_R^+" : "point outside V_R^-");

  const Complex c = fwd ? H.leading() : H.leading_inverse();
  const double cAbs = std::abs(c);
  const double M = fwd ? H.q_l1() : H.qp_l1();
  const double d = static_cast<double>(H.degree());
  const long long dInt = H.degree();
  const double guard = detail::step_guard(H);

  Complex s = std::log(detail::coord(z, dir));
  int n = 0;
  double err = std::numeric_limits<double>::infinity();
  bool met = false;

  // Tail of the telescoping sum, certified once the coordinate is large
  // enough that every later ratio term stays within [1/2, 3/2] of 1.
  auto certified_tail = [&](double Y) {
    if (!(Y >= 1.0 && cAbs * Y >= std::max(2.0 * M, M + 2.0)))
      return std::numeric_limits<double>::infinity();
    return 4.0 * M * std::pow(d, -static_cast<double>(n + 1)) / (cAbs * Y);
  };

  for (int iter = 0; iter < 256; ++iter) {
    double tail = certified_tail(std::abs(detail::coord(z, dir)));
    if (tail < err) err = tail;
    if (err <= tol) {
      met = true;
      break;
    }
    if (detail::max_coord(z) > guard) break;
    Point2 w;
    try {
      w = detail::step(H, z, dir);
    } catch (const Overflow&) {
      break;
    }
    Complex ratio = detail::coord(w, dir) / (c * ipow(detail::coord(z, dir), dInt));
    Complex u = ratio - Complex{1.0, 0.0};
    if (!(std::abs(u) < 1.0))
      throw BranchDomainViolation("ratio term left the principal branch at iterate " +
                                  std::to_string(n) + ": |u| = " + format_double(std::abs(u)));
    s += std::pow(d, -static_cast<double>(n + 1)) * std::log(Complex{1.0, 0.0} + u);
    z = w;
    ++n;
  }
  {
    double tail = certified_tail(std::abs(detail::coord(z, dir)));
    if (tail < err) err = tail;
    if (err <= tol) met = true;
  }

  BottcherValue r;
  r.value = std::exp(s);
  r.errorBound = err;
  r.iterations = n;
  r.toleranceMet = met;
  return r;
}

GreenValue green_via_bottcher(const HenonMap& H, Point2 z, Direction dir, double tol) {
  BottcherValue b = bottcher(H, z, dir, tol);
  const double cAbs = std::abs(dir == Direction::forward ? H.leading() : H.leading_inverse());
  GreenValue g;
  g.value = std::max(0.0, std::log(std::abs(b.value)) +
                              std::log(cAbs) / static_cast<double>(H.degree() - 1));
  g.errorBound = b.errorBound;
  g.iterations = b.iterations;
  g.escaped = true;
  g.toleranceMet = b.toleranceMet;
  return g;
}

}  // namespace henon
