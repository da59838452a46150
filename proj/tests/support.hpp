#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "henon/dynamics.hpp"
#include "henon/henon_map.hpp"

namespace testsupport {

using namespace henon;

inline Complex rand_coeff(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::uniform_real_distribution<double> arg(0.0, 6.283185307179586);
  return std::polar(mag(rng), arg(rng));
}

inline std::vector<HenonFactor> random_factors(std::mt19937_64& rng, int maxFactors, int maxDeg,
                                               double lo, double hi) {
  std::uniform_int_distribution<int> mDist(1, maxFactors);
  std::uniform_int_distribution<int> dDist(2, maxDeg);
  int m = mDist(rng);
  std::vector<HenonFactor> fs;
  fs.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    int dj = dDist(rng);
    std::vector<Complex> coeffs(static_cast<std::size_t>(dj) + 1);
    for (int k = 0; k <= dj; ++k) coeffs[static_cast<std::size_t>(k)] = rand_coeff(rng, lo, hi);
    fs.push_back(HenonFactor{rand_coeff(rng, lo, hi), rand_coeff(rng, lo, hi), UniPoly(coeffs)});
  }
  return fs;
}

inline Point2 random_point(std::mt19937_64& rng, double maxNorm) {
  double s = maxNorm / 2.0;
  std::uniform_real_distribution<double> u(-s, s);
  return Point2{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
}

// Cheap construction options for tests that do not consume growth bounds.
inline MakeOptions fast_opts() {
  MakeOptions o;
  o.growth_samples = 200;
  return o;
}

// Round-trip test family: maps whose per-factor images on the test ball stay
// below 1e7, so the inverse sweep is not dominated by cancellation in
// p(y) - delta*x.
inline HenonMap tame_map(std::mt19937_64& rng, double ballRadius, int maxFactors = 2) {
  // Round-trip reconstruction subtracts values as large as the biggest
  // intermediate and re-amplifies the residue through p' and 1/b, 1/delta,
  // so the error is about eps * cap * p' / (b delta^2). Caps of 5e3 with
  // coefficients bounded away from zero keep that near 1e-10 on the ball.
  std::uniform_int_distribution<int> mDist(1, maxFactors);
  std::uniform_int_distribution<int> dDist(2, 3);
  for (;;) {
    int m = mDist(rng);
    double hi = m == 1 ? 1.5 : 0.8;
    std::vector<HenonFactor> fs;
    for (int j = 0; j < m; ++j) {
      int dj = dDist(rng);
      std::vector<Complex> coeffs(static_cast<std::size_t>(dj) + 1);
      for (int k = 0; k <= dj; ++k) coeffs[static_cast<std::size_t>(k)] = rand_coeff(rng, 0.5, hi);
      fs.push_back(HenonFactor{rand_coeff(rng, 0.5, hi), rand_coeff(rng, 0.5, hi),
                               UniPoly(coeffs)});
    }
    std::mt19937_64 probe(7);
    bool ok = true;
    for (int i = 0; i < 600 && ok; ++i) {
      Point2 w = random_point(probe, ballRadius);
      for (const HenonFactor& f : fs) {
        w = Point2{f.b * w.y, f.p.eval(w.y) - f.delta * w.x};
        if (std::max(std::abs(w.x), std::abs(w.y)) > 5e3) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return make_henon(fs, fast_opts());
  }
}

inline HenonMap quad_map() {
  return make_henon({HenonFactor{Complex{1, 0}, Complex{1, 0}, UniPoly({{0, 0}, {0, 0}, {1, 0}})}});
}

// Worked composite: degree 6, leading 3, inverse leading 9/64.
inline HenonMap degree6_map() {
  return make_henon({HenonFactor{Complex{1, 0}, Complex{1, 0}, UniPoly({{0, 0}, {0, 0}, {1, 0}})},
                     HenonFactor{Complex{2, 0}, Complex{1, 0},
                                 UniPoly({{0, 0}, {0, 0}, {0, 0}, {3, 0}})}});
}

}  // namespace testsupport
