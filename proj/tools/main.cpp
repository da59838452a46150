#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "henon/bottcher.hpp"
#include "henon/errors.hpp"
#include "henon/grid.hpp"
#include "henon/map_io.hpp"
#include "henon/onedim.hpp"
#include "henon/rigidity.hpp"

namespace {

using namespace henon;

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    double v = 0.0;
    auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (res.ec != std::errc() || res.ptr != piece.data() + piece.size())
      throw std::invalid_argument(what + ": expected " + std::to_string(count) +
                                  " comma-separated numbers, got '" + text + "'");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.size() != count)
    throw std::invalid_argument(what + ": expected " + std::to_string(count) +
                                " comma-separated numbers, got '" + text + "'");
  return out;
}

Complex parse_complex_pair(const std::string& text, const std::string& what) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    auto v = parse_doubles(text, 1, what);
    return Complex{v[0], 0.0};
  }
  auto v = parse_doubles(text, 2, what);
  return Complex{v[0], v[1]};
}

GridSpec build_spec(const std::string& slice, const std::string& window, int res, int maxIter) {
  GridSpec spec;
  spec.res = res;
  spec.maxIter = maxIter;
  if (slice == "real") {
    spec.slice = SliceKind::real_plane;
  } else if (slice.rfind("x=", 0) == 0) {
    spec.slice = SliceKind::fix_x;
    spec.fixed = parse_complex_pair(slice.substr(2), "--slice");
  } else if (slice.rfind("y=", 0) == 0) {
    spec.slice = SliceKind::fix_y;
    spec.fixed = parse_complex_pair(slice.substr(2), "--slice");
  } else {
    throw std::invalid_argument("--slice must be x=RE[,IM], y=RE[,IM], or real");
  }
  auto w = parse_doubles(window, 4, "--window");
  spec.a0min = w[0];
  spec.a0max = w[1];
  spec.a1min = w[2];
  spec.a1max = w[3];
  return spec;
}

Direction parse_dir(const std::string& dir) {
  if (dir == "fwd" || dir == "forward") return Direction::forward;
  if (dir == "bwd" || dir == "backward") return Direction::backward;
  throw std::invalid_argument("--dir must be fwd or bwd");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

void print_affine(std::ostream& os, const AffineMap& sigma) {
  os << "sigma: linear [" << format_complex(sigma.m[0]) << ", " << format_complex(sigma.m[1])
     << "; " << format_complex(sigma.m[2]) << ", " << format_complex(sigma.m[3])
     << "], shift [" << format_complex(sigma.t[0]) << ", " << format_complex(sigma.t[1]) << "]"
     << (sigma.approx_identity() ? " (identity)" : "") << "\n";
}

struct GreenArgs {
  std::string map, slice = "x=0", window = "-3,3,-3,3", dir = "fwd", out, pgm;
  int res = 64, maxIter = 100, threads = 1;
  double tol = 1e-8;
  std::optional<double> gmax;
};

int run_green(const GreenArgs& a) {
  HenonMap H = load_map_file(a.map);
  GridSpec spec = build_spec(a.slice, a.window, a.res, a.maxIter);
  GreenGrid grid = render_green(H, spec, parse_dir(a.dir), a.tol, a.threads);
  if (!a.out.empty()) {
    auto os = open_out(a.out);
    write_green_csv(grid, os);
  } else {
    write_green_csv(grid, std::cout);
  }
  if (!a.pgm.empty()) {
    auto os = open_out(a.pgm);
    write_green_pgm(grid, os, a.gmax);
  }
  return 0;
}

struct MaskArgs {
  std::string map, slice = "x=0", window = "-3,3,-3,3", dir = "fwd", out;
  int res = 64, maxIter = 100, threads = 1;
  double tol = 1e-8, c = 1.0;
};

int run_mask(const MaskArgs& a) {
  HenonMap H = load_map_file(a.map);
  GridSpec spec = build_spec(a.slice, a.window, a.res, a.maxIter);
  GreenGrid grid = render_green(H, spec, parse_dir(a.dir), a.tol, a.threads);
  if (!a.out.empty()) {
    auto os = open_out(a.out);
    write_mask_pgm(grid, a.c, os);
  } else {
    write_mask_pgm(grid, a.c, std::cout);
  }
  return 0;
}

struct BottcherArgs {
  std::string map, point, dir = "fwd";
  double tol = 1e-9;
};

int run_bottcher(const BottcherArgs& a) {
  HenonMap H = load_map_file(a.map);
  auto v = parse_doubles(a.point, 4, "--point");
  Point2 z{Complex{v[0], v[1]}, Complex{v[2], v[3]}};
  BottcherValue b = bottcher(H, z, parse_dir(a.dir), a.tol);
  std::cout << "value: " << format_complex(b.value) << "\n"
            << "log-domain error bound: " << format_double(b.errorBound) << "\n"
            << "iterations: " << b.iterations << "\n"
            << "tolerance met: " << (b.toleranceMet ? "yes" : "no") << "\n";
  GreenValue g = green_via_bottcher(H, z, parse_dir(a.dir), a.tol);
  std::cout << "green via product: " << format_double(g.value) << "\n";
  return 0;
}

struct PairArgs {
  std::string f, h;
  int max = 6;
};

int run_commute(const PairArgs& a) {
  HenonMap F = load_map_file(a.f);
  HenonMap H = load_map_file(a.h);
  CommutationReport rep = commutator_diagonal(F, H);
  std::cout << "candidate deltaMinus: " << format_complex(rep.candidateMinus) << "\n"
            << "candidate deltaPlus: " << format_complex(rep.candidatePlus) << "\n"
            << "max residual: " << format_double(rep.maxResidual) << "\n"
            << "method: "
            << (rep.method == CommutationMethod::coefficient_solve ? "coefficient-solve"
                                                                   : "exhaustive-compare")
            << "\n";
  if (rep.witness) {
    std::cout << "witness: deltaMinus = " << format_complex(rep.witness->deltaMinus)
              << ", deltaPlus = " << format_complex(rep.witness->deltaPlus) << "\n";
    return 0;
  }
  std::cout << "no diagonal witness\n";
  return 1;
}

int run_match(const PairArgs& a) {
  HenonMap F = load_map_file(a.f);
  HenonMap H = load_map_file(a.h);
  auto match = iterate_match(F, H, a.max, a.max);
  if (match) {
    std::cout << "F^" << match->m0 << " = sigma o H^" << match->n0 << "\n";
    print_affine(std::cout, match->sigma);
    return 0;
  }
  bool degreeCompatible = false;
  __int128 fm = 1;
  for (int m = 1; m <= a.max && !degreeCompatible; ++m) {
    fm *= F.degree();
    __int128 hn = 1;
    for (int n = 1; n <= a.max; ++n) {
      hn *= H.degree();
      if (fm == hn) {
        degreeCompatible = true;
        break;
      }
    }
  }
  std::cout << (degreeCompatible ? "no affine factor for any degree-compatible pair\n"
                                 : "no (m, n) with d_F^m = d_H^n\n");
  return 1;
}

struct OnedimArgs {
  std::string p, q, point;
  double tol = 1e-9;
  int maxIter = 256;
};

int run_onedim(const OnedimArgs& a) {
  PolyMap1D P{parse_polynomial(a.p)};
  if (!a.q.empty()) {
    PolyMap1D Q{parse_polynomial(a.q)};
    auto sigma = beardon_sigma(P, Q);
    if (sigma) {
      std::cout << "sigma: a = " << format_complex(sigma->a)
                << ", b = " << format_complex(sigma->b)
                << (std::abs(sigma->a - Complex{1, 0}) <= 1e-9 && std::abs(sigma->b) <= 1e-9
                        ? " (identity)"
                        : "")
                << "\n";
      return 0;
    }
    std::cout << "no unimodular affine conjugacy\n";
    return 1;
  }
  if (!a.point.empty()) {
    Complex z = parse_complex_pair(a.point, "--point");
    GreenValue g = green_1d(P, z, a.tol, a.maxIter);
    std::cout << "value: " << format_double(g.value) << "\n"
              << "error bound: " << format_double(g.errorBound) << "\n"
              << "iterations: " << g.iterations << "\n"
              << "escaped: " << (g.escaped ? "yes" : "no") << "\n";
    return 0;
  }
  throw std::invalid_argument("onedim needs --q (conjugacy) or --point (escape rate)");
}

struct WitnessArgs {
  std::string map;
  int samples = 10000, thetaCount = 16, maxIter = 200;
  double box = 2.0;
  unsigned long long seed = 1;
};

int run_witness(const WitnessArgs& a) {
  HenonMap H = load_map_file(a.map);
  auto w = reinhardt_witness(H, a.samples, a.thetaCount, a.maxIter, a.box, a.seed);
  if (w) {
    std::cout << "bounded point: (" << format_complex(w->boundedPoint.x) << ", "
              << format_complex(w->boundedPoint.y) << ")\n"
              << "rotation index: " << w->thetaIndex << " (theta = " << format_double(w->theta)
              << ")\n"
              << "rotated point escapes at iterate " << w->escapeIteration << "\n"
              << "samples tried: " << w->samplesTried << "\n";
    return 0;
  }
  std::cout << "no rotation witness found\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"escape-rate and commutation toolkit for composite quadratic-family "
               "automorphisms of C^2"};
  app.require_subcommand(1);

  GreenArgs ga;
  auto* green = app.add_subcommand("green", "escape-rate grid over a plane slice (CSV, "
                                            "optional PGM)");
  green->add_option("--map", ga.map, "map JSON file")->required();
  green->add_option("--slice", ga.slice, "x=RE[,IM], y=RE[,IM], or real");
  green->add_option("--window", ga.window, "a0min,a0max,a1min,a1max");
  green->add_option("--res", ga.res, "grid resolution per axis");
  green->add_option("--dir", ga.dir, "fwd or bwd");
  green->add_option("--tol", ga.tol, "refinement tolerance");
  green->add_option("--max-iter", ga.maxIter, "classification iteration budget");
  green->add_option("--threads", ga.threads, "worker threads (identical output)");
  green->add_option("--out", ga.out, "CSV output path (stdout when omitted)");
  green->add_option("--pgm", ga.pgm, "also write an 8-bit PGM rendering here");
  double gmaxArg = 0.0;
  auto* gmaxOpt = green->add_option("--gmax", gmaxArg, "PGM brightness saturation value");

  MaskArgs ma;
  auto* mask = app.add_subcommand("mask", "binary sublevel mask of the escape rate (PGM)");
  mask->add_option("--map", ma.map, "map JSON file")->required();
  mask->add_option("--slice", ma.slice, "x=RE[,IM], y=RE[,IM], or real");
  mask->add_option("--window", ma.window, "a0min,a0max,a1min,a1max");
  mask->add_option("--res", ma.res, "grid resolution per axis");
  mask->add_option("--dir", ma.dir, "fwd or bwd");
  mask->add_option("--tol", ma.tol, "refinement tolerance");
  mask->add_option("--max-iter", ma.maxIter, "classification iteration budget");
  mask->add_option("--threads", ma.threads, "worker threads (identical output)");
  mask->add_option("--c", ma.c, "sublevel threshold (pixel set when value < c)")->required();
  mask->add_option("--out", ma.out, "PGM output path (stdout when omitted)");

  BottcherArgs ba;
  auto* bot = app.add_subcommand("bottcher", "normalized escape coordinate at one point");
  bot->add_option("--map", ba.map, "map JSON file")->required();
  bot->add_option("--point", ba.point, "x_re,x_im,y_re,y_im")->required();
  bot->add_option("--dir", ba.dir, "fwd or bwd");
  bot->add_option("--tol", ba.tol, "tail tolerance");

  PairArgs ca;
  auto* com = app.add_subcommand("commute", "diagonal commutation witness for two maps");
  com->set_help_flag("--help", "print this help message and exit");  // frees --h
  com->add_option("--f", ca.f, "first map JSON file")->required();
  com->add_option("--h", ca.h, "second map JSON file")->required();

  PairArgs ia;
  auto* mat = app.add_subcommand("match", "affine factor between iterate powers");
  mat->set_help_flag("--help", "print this help message and exit");  // frees --h
  mat->add_option("--f", ia.f, "first map JSON file")->required();
  mat->add_option("--h", ia.h, "second map JSON file")->required();
  mat->add_option("--max", ia.max, "max power for each side");

  OnedimArgs oa;
  auto* one = app.add_subcommand("onedim", "one-variable escape rate / commuting conjugacy");
  one->add_option("--p", oa.p, "polynomial expression")->required();
  one->add_option("--q", oa.q, "second polynomial (conjugacy test)");
  one->add_option("--point", oa.point, "re[,im] (escape rate at this point)");
  one->add_option("--tol", oa.tol, "tolerance");
  one->add_option("--max-iter", oa.maxIter, "iteration budget");

  WitnessArgs wa;
  auto* wit = app.add_subcommand("witness", "bounded point whose coordinate rotation escapes");
  wit->add_option("--map", wa.map, "map JSON file")->required();
  wit->add_option("--samples", wa.samples, "random points to try");
  wit->add_option("--theta-count", wa.thetaCount, "rotation angles per point");
  wit->add_option("--max-iter", wa.maxIter, "iteration budget");
  wit->add_option("--box", wa.box, "sampling box half-width");
  wit->add_option("--seed", wa.seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (green->parsed()) {
      if (gmaxOpt->count() > 0) ga.gmax = gmaxArg;
      return run_green(ga);
    }
    if (mask->parsed()) return run_mask(ma);
    if (bot->parsed()) return run_bottcher(ba);
    if (com->parsed()) return run_commute(ca);
    if (mat->parsed()) return run_match(ia);
    if (one->parsed()) return run_onedim(oa);
    if (wit->parsed()) return run_witness(wa);
  } catch (const TermExplosion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const RadiusSearchFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Overflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
