#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "henon/dynamics.hpp"

namespace henon {

enum class SliceKind { fix_x, fix_y, real_plane };

// Two-real-parameter slice of C^2 sampled on an endpoint-inclusive res x res
// grid: grid index (i, j) maps to plane coordinates
// (a0min + i*step0, a1min + j*step1). For fix_x / fix_y the two axes are the
// real and imaginary parts of the free coordinate; for real_plane they are
// Re x and Re y with zero imaginary parts.
struct GridSpec {
  SliceKind slice = SliceKind::fix_x;
  Complex fixed{0, 0};
  double a0min = -3.0, a0max = 3.0;
  double a1min = -3.0, a1max = 3.0;
  int res = 64;
  int maxIter = 100;
};

Point2 grid_point(const GridSpec& spec, int i, int j);

struct GridCell {
  Point2 z;
  Classification cls;
  GreenValue g;
};

struct GreenGrid {
  GridSpec spec;
  Direction dir = Direction::forward;
  std::vector<GridCell> cells;  // index j * res + i
  double observedMax = 0.0;
};

// Evaluates classification and green on every grid point. Work is split into
// contiguous row blocks per thread and written by index, so the result is
// identical for every thread count. Requires res >= 2, maxIter >= 1, a
// nondegenerate window, and 1 <= threads <= 256.
GreenGrid render_green(const HenonMap& H, const GridSpec& spec, Direction dir, double tol,
                       int threads = 1);

// CSV: header i,j,c1_re,c1_im,c2_re,c2_im,value,error,class with one row per
// grid point, j ascending then i ascending; class is E<n> or B<n>.
void write_green_csv(const GreenGrid& grid, std::ostream& os);

// 8-bit binary PGM, pixel = round(255 * min(1, value / gmax)); gmax defaults
// to the observed maximum. The top pixel row is the maximal second axis.
void write_green_pgm(const GreenGrid& grid, std::ostream& os,
                     std::optional<double> gmax = std::nullopt);

// Binary sublevel mask: pixel 255 iff value < c (undecided points have value
// 0 and render inside). Requires c > 0.
void write_mask_pgm(const GreenGrid& grid, double c, std::ostream& os);

std::vector<std::uint8_t> sublevel_mask(const GreenGrid& grid, double c);

struct ReinhardtWitness {
  Point2 boundedPoint;
  int thetaIndex = 0;
  double theta = 0.0;
  int escapeIteration = 0;
  std::size_t samplesTried = 0;
};

// Searches random points (a, b) in the box of half-width boxHalfWidth that
// classify as bounded-so-far with |a| > 0, and returns the first whose
// rotation (e^{i theta} a, b), theta = 2 pi k / thetaCount, is certified
// escaping. Requires samples >= 100, thetaCount >= 4.
std::optional<ReinhardtWitness> reinhardt_witness(const HenonMap& H, int samples,
                                                  int thetaCount, int maxIter,
                                                  double boxHalfWidth = 2.0,
                                                  unsigned long long seed = 1);

}  // namespace henon
