#include "henon/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "detail.hpp"
#include "henon/errors.hpp"

namespace henon {

Classification classify(const HenonMap& H, Point2 z, Direction dir, int maxIter) {
  if (maxIter < 1) throw std::invalid_argument("classify: maxIter >= 1 required");
  for (int n = 0;; ++n) {
    if (detail::in_region(H, z, dir)) return {true, n};
    if (n == maxIter) return {false, maxIter};
    try {
      z = detail::step(H, z, dir);
    } catch (const Overflow&) {
      // Certifies escape: the orbit left every bounded set.
      return {true, n + 1};
    }
  }
}

namespace {

struct OrbitValue {
  double value = 0.0;
  int n = 0;
  bool escaped = false;
};

// Searches for filtration entry, then refines d^{-n} log |coord| until the
// requested bound (2 * growthC * d^{-n} <= tol, skipped when growthC <= 0)
// or the iterate guard stops it.
OrbitValue orbit_green(const HenonMap& H, Point2 z, Direction dir, int searchIter,
                       double growthC, double tol) {
  OrbitValue r;
  for (int n = 0;; ++n) {
    if (detail::in_region(H, z, dir)) {
      r.escaped = true;
      r.n = n;
      break;
    }
    if (n == searchIter) {
      r.n = searchIter;
      return r;
    }
    try {
      z = detail::step(H, z, dir);
    } catch (const Overflow&) {
      // Escape is certain; the value from the last representable iterate.
      r.escaped = true;
      r.n = n;
      break;
    }
  }

  const double d = static_cast<double>(H.degree());
  const double guard = detail::step_guard(H);
  for (int extra = 0; extra < 256; ++extra) {
    if (growthC > 0.0 && 2.0 * growthC * std::pow(d, -static_cast<double>(r.n)) <= tol) break;
    if (detail::max_coord(z) > guard) break;
    try {
      z = detail::step(H, z, dir);
      ++r.n;
    } catch (const Overflow&) {
      break;
    }
  }
  double mag = std::abs(detail::coord(z, dir));
  r.value = std::pow(d, -static_cast<double>(r.n)) * std::max(0.0, std::log(mag));
  return r;
}

}  // namespace

GreenValue green(const HenonMap& H, Point2 z, Direction dir, double tol, int maxIter) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("green: tol >= 1e-12 required");
  if (maxIter < 1) throw std::invalid_argument("green: maxIter >= 1 required");
  const double d = static_cast<double>(H.degree());
  const double growthC = H.growth_bound();
  OrbitValue r = orbit_green(H, z, dir, maxIter, growthC, tol);
  GreenValue g;
  g.iterations = r.n;
  g.escaped = r.escaped;
  if (!r.escaped) {
    g.value = 0.0;
    g.errorBound = growthC * std::pow(d, -static_cast<double>(maxIter));
    g.toleranceMet = g.errorBound <= tol;
    return g;
  }
  g.value = r.value;
  g.errorBound = 2.0 * growthC * std::pow(d, -static_cast<double>(r.n));
  g.toleranceMet = g.errorBound <= tol;
  return g;
}

namespace {

double sampled_gap_max(const HenonMap& H, Direction dir, const std::vector<double>& shells,
                       int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tau = 2.0 * std::numbers::pi;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double r = shells[static_cast<std::size_t>(s) % shells.size()];
    double t = unit(rng);
    Complex main = std::polar(r, tau * unit(rng));
    Complex other = std::polar(t * r, tau * unit(rng));
    Point2 z = dir == Direction::forward ? Point2{other, main} : Point2{main, other};
    OrbitValue v = orbit_green(H, z, dir, 128, 0.0, 0.0);
    double gap = std::abs(v.value - std::max(0.0, std::log(r)));
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace

double growth_constant(const HenonMap& H, Direction dir, int samples, unsigned long long seed) {
  if (samples < 100) throw std::invalid_argument("growth_constant: samples >= 100 required");
  double R = H.radius();
  return 2.0 * sampled_gap_max(H, dir, {R, 2.0 * R, 4.0 * R}, samples, seed);
}

double shell_gap_max(const HenonMap& H, Direction dir, double shellRadius, int samples,
                     unsigned long long seed) {
  if (samples < 100) throw std::invalid_argument("shell_gap_max: samples >= 100 required");
  if (!(shellRadius >= H.radius()))
    throw std::invalid_argument("shell_gap_max: shellRadius >= validated radius required");
  return sampled_gap_max(H, dir, {shellRadius}, samples, seed);
}

}  // namespace henon
