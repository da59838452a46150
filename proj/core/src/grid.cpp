#include "henon/grid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "henon/errors.hpp"

namespace henon {

Point2 grid_point(const GridSpec& spec, int i, int j) {
  const double s0 = (spec.a0max - spec.a0min) / static_cast<double>(spec.res - 1);
  const double s1 = (spec.a1max - spec.a1min) / static_cast<double>(spec.res - 1);
  const double a0 = spec.a0min + i * s0;
  const double a1 = spec.a1min + j * s1;
  switch (spec.slice) {
    case SliceKind::fix_x:
      return {spec.fixed, Complex{a0, a1}};
    case SliceKind::fix_y:
      return {Complex{a0, a1}, spec.fixed};
    case SliceKind::real_plane:
    default:
      return {Complex{a0, 0.0}, Complex{a1, 0.0}};
  }
}

GreenGrid render_green(const HenonMap& H, const GridSpec& spec, Direction dir, double tol,
                       int threads) {
  if (spec.res < 2) throw std::invalid_argument("render_green: res >= 2 required");
  if (spec.maxIter < 1) throw std::invalid_argument("render_green: maxIter >= 1 required");
  if (!(spec.a0max > spec.a0min) || !(spec.a1max > spec.a1min))
    throw std::invalid_argument("render_green: degenerate window");
  if (threads < 1 || threads > 256)
    throw std::invalid_argument("render_green: threads in [1, 256] required");

  GreenGrid grid;
  grid.spec = spec;
  grid.dir = dir;
  grid.cells.resize(static_cast<std::size_t>(spec.res) * static_cast<std::size_t>(spec.res));

  auto renderRows = [&](int j0, int j1, std::exception_ptr& err) noexcept {
    try {
      for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < spec.res; ++i) {
          Point2 z = grid_point(spec, i, j);
          GridCell cell;
          cell.z = z;
          cell.cls = classify(H, z, dir, spec.maxIter);
          cell.g = green(H, z, dir, tol, spec.maxIter);
          grid.cells[static_cast<std::size_t>(j) * spec.res + i] = cell;
        }
      }
    } catch (...) {
      err = std::current_exception();
    }
  };

  int useThreads = std::min(threads, spec.res);
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(useThreads));
  if (useThreads == 1) {
    renderRows(0, spec.res, errs[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(useThreads));
    int per = (spec.res + useThreads - 1) / useThreads;
    for (int t = 0; t < useThreads; ++t) {
      int j0 = t * per;
      int j1 = std::min(spec.res, j0 + per);
      if (j0 >= j1) break;
      pool.emplace_back(renderRows, j0, j1, std::ref(errs[static_cast<std::size_t>(t)]));
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  for (const GridCell& c : grid.cells) grid.observedMax = std::max(grid.observedMax, c.g.value);
  return grid;
}

void write_green_csv(const GreenGrid& grid, std::ostream& os) {
  os << "i,j,c1_re,c1_im,c2_re,c2_im,value,error,class\n";
  const int res = grid.spec.res;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const GridCell& c = grid.cells[static_cast<std::size_t>(j) * res + i];
      os << i << ',' << j << ',' << format_double(c.z.x.real()) << ','
         << format_double(c.z.x.imag()) << ',' << format_double(c.z.y.real()) << ','
         << format_double(c.z.y.imag()) << ',' << format_double(c.g.value) << ','
         << format_double(c.g.errorBound) << ',' << (c.cls.escaping ? 'E' : 'B')
         << c.cls.iterations << '\n';
    }
  }
}

namespace {

void write_pgm_bytes(std::ostream& os, int res, const std::vector<std::uint8_t>& pixels) {
  os << "P5\n" << res << ' ' << res << "\n255\n";
  os.write(reinterpret_cast<const char*>(pixels.data()),
           static_cast<std::streamsize>(pixels.size()));
}

}  // namespace

void write_green_pgm(const GreenGrid& grid, std::ostream& os, std::optional<double> gmax) {
  const int res = grid.spec.res;
  const double top = gmax.value_or(grid.observedMax);
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(res) * res);
  for (int j = res - 1; j >= 0; --j) {
    for (int i = 0; i < res; ++i) {
      double v = grid.cells[static_cast<std::size_t>(j) * res + i].g.value;
      double scaled = top > 0.0 ? std::min(1.0, v / top) : 0.0;
      pixels.push_back(static_cast<std::uint8_t>(std::lround(255.0 * scaled)));
    }
  }
  write_pgm_bytes(os, res, pixels);
}

std::vector<std::uint8_t> sublevel_mask(const GreenGrid& grid, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("sublevel_mask: c > 0 required");
  const int res = grid.spec.res;
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(res) * res);
  for (int j = res - 1; j >= 0; --j)
    for (int i = 0; i < res; ++i)
      pixels.push_back(grid.cells[static_cast<std::size_t>(j) * res + i].g.value < c ? 255 : 0);
  return pixels;
}

void write_mask_pgm(const GreenGrid& grid, double c, std::ostream& os) {
  write_pgm_bytes(os, grid.spec.res, sublevel_mask(grid, c));
}

std::optional<ReinhardtWitness> reinhardt_witness(const HenonMap& H, int samples, int thetaCount,
                                                  int maxIter, double boxHalfWidth,
                                                  unsigned long long seed) {
  if (samples < 100) throw std::invalid_argument("reinhardt_witness: samples >= 100 required");
  if (thetaCount < 4) throw std::invalid_argument("reinhardt_witness: thetaCount >= 4 required");
  if (maxIter < 1) throw std::invalid_argument("reinhardt_witness: maxIter >= 1 required");
  if (!(boxHalfWidth > 0.0))
    throw std::invalid_argument("reinhardt_witness: boxHalfWidth > 0 required");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-boxHalfWidth, boxHalfWidth);
  const double tau = 2.0 * std::numbers::pi;

  for (int s = 0; s < samples; ++s) {
    // Real draws every other sample: a real elliptic region is the usual
    // source of bounded points whose rotated twins escape.
    Complex a, b;
    if (s % 2 == 0) {
      a = Complex{box(rng), 0.0};
      b = Complex{box(rng), 0.0};
    } else {
      a = Complex{box(rng), box(rng)};
      b = Complex{box(rng), box(rng)};
    }
    if (std::abs(a) == 0.0) continue;
    if (classify(H, Point2{a, b}, Direction::forward, maxIter).escaping) continue;
    for (int k = 1; k < thetaCount; ++k) {
      double theta = tau * static_cast<double>(k) / static_cast<double>(thetaCount);
      Point2 rotated{a * std::polar(1.0, theta), b};
      Classification cls = classify(H, rotated, Direction::forward, maxIter);
      if (cls.escaping) {
        ReinhardtWitness w;
        w.boundedPoint = Point2{a, b};
        w.thetaIndex = k;
        w.theta = theta;
        w.escapeIteration = cls.iterations;
        w.samplesTried = static_cast<std::size_t>(s) + 1;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace henon
