#include "henon/henon_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "henon/dynamics.hpp"
#include "henon/errors.hpp"

namespace henon {

Point2 AffineMap::apply(Point2 z) const {
  return {m[0] * z.x + m[1] * z.y + t[0], m[2] * z.x + m[3] * z.y + t[1]};
}

bool AffineMap::approx_identity(double tol) const {
  return std::abs(m[0] - Complex{1, 0}) <= tol && std::abs(m[3] - Complex{1, 0}) <= tol &&
         std::abs(m[1]) <= tol && std::abs(m[2]) <= tol && std::abs(t[0]) <= tol &&
         std::abs(t[1]) <= tol;
}

bool in_v_plus(Point2 z, double R) {
  return std::abs(z.x) < std::abs(z.y) && std::abs(z.y) > R;
}

bool in_v_minus(Point2 z, double R) {
  return std::abs(z.y) < std::abs(z.x) && std::abs(z.x) > R;
}

double norm2(Point2 z) { return std::sqrt(std::norm(z.x) + std::norm(z.y)); }

Point2 apply(const HenonMap& H, Point2 z) {
  for (const HenonFactor& f : H.factors()) {
    Complex ny = f.p.eval(z.y) - f.delta * z.x;
    Complex nx = f.b * z.y;
    if (!(std::abs(nx) <= kEvalOverflowGuard) || !(std::abs(ny) <= kEvalOverflowGuard))
      throw Overflow();
    z = {nx, ny};
  }
  return z;
}

Point2 apply_inverse(const HenonMap& H, Point2 z) {
  const auto& fs = H.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    Complex u = z.x / it->b;
    Complex nx = (it->p.eval(u) - z.y) / it->delta;
    if (!(std::abs(nx) <= kEvalOverflowGuard) || !(std::abs(u) <= kEvalOverflowGuard))
      throw Overflow();
    z = {nx, u};
  }
  return z;
}

const BiPolyPair& symbolic_components(const HenonMap& H) { return H.forward_components(); }
const BiPolyPair& symbolic_inverse_components(const HenonMap& H) {
  return H.inverse_components();
}

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void validate_factor(const HenonFactor& f, std::size_t index) {
  std::string tag = "factor " + std::to_string(index) + ": ";
  if (f.p.degree() < 2)
    throw InvalidFactor(tag + "deg(p) = " + std::to_string(f.p.degree()) + ", need >= 2");
  if (f.b == Complex{} || f.delta == Complex{}) throw InvalidFactor(tag + "b*delta vanishes");
  if (!finite(f.b) || !finite(f.delta)) throw InvalidFactor(tag + "non-finite scalar");
  for (int k = 0; k <= f.p.degree(); ++k)
    if (!finite(f.p.coeff(k))) throw InvalidFactor(tag + "non-finite coefficient in p");
}

// p evaluated at a polynomial argument, Horner over the argument.
BiPoly eval_unipoly_at(const UniPoly& p, const BiPoly& arg, std::size_t cap) {
  BiPoly acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc.mul(arg, cap) + BiPoly::constant(p.coeff(k));
  return acc;
}

struct ShellSample {
  Point2 z;
  bool strict;
};

// density^2 points with the main coordinate on the circle of radius r and the
// other coordinate filling |other| <= r; strict marks samples interior to the
// corresponding filtration piece when r exceeds the validated radius.
ShellSample shell_sample(double r, double R, int density, int a, int b, bool plusSide) {
  const double tau = 2.0 * std::numbers::pi;
  double t = static_cast<double>(a) / static_cast<double>(density - 1);
  Complex main = std::polar(r, tau * static_cast<double>(b) / static_cast<double>(density));
  Complex other =
      std::polar(t * r, tau * static_cast<double>((a + b) % density) / static_cast<double>(density));
  bool strict = t < 1.0 && r > R;
  if (plusSide) return {Point2{other, main}, strict};
  return {Point2{main, other}, strict};
}

}  // namespace

RadiusReport validate_radius(const HenonMap& H, double R, int density) {
  if (density < 8) throw std::invalid_argument("validate_radius: density >= 8 required");
  if (!(R > 0.0)) throw std::invalid_argument("validate_radius: R must be positive");

  static constexpr const char* kS1 = "H(V+) in V+";
  static constexpr const char* kS2 = "H(V+ u VR) in V+ u VR";
  static constexpr const char* kS3 = "Hinv(V-) in V-";
  static constexpr const char* kS4 = "Hinv(V- u VR) in V- u VR";

  const double slack = 1e-12;
  auto inClosurePlus = [&](Point2 w) {
    double ax = std::abs(w.x), ay = std::abs(w.y);
    if (ax <= ay * (1.0 + slack) && ay >= R * (1.0 - slack)) return true;
    return ax <= R * (1.0 + slack) && ay <= R * (1.0 + slack);
  };
  auto inClosureMinus = [&](Point2 w) {
    double ax = std::abs(w.x), ay = std::abs(w.y);
    if (ay <= ax * (1.0 + slack) && ax >= R * (1.0 - slack)) return true;
    return ax <= R * (1.0 + slack) && ay <= R * (1.0 + slack);
  };

  RadiusReport rep;
  rep.radius = R;
  rep.density = density;

  auto fail = [&](Point2 z, Point2 w, const char* statement) {
    rep.counterexample = RadiusCounterexample{z, w, statement};
    rep.passed = false;
    return rep;
  };

  for (double r : {R, 2.0 * R, 4.0 * R}) {
    for (int a = 0; a < density; ++a) {
      for (int b = 0; b < density; ++b) {
        ShellSample sp = shell_sample(r, R, density, a, b, true);
        Point2 wp = apply(H, sp.z);
        ++rep.checked;
        if (sp.strict) {
          if (!in_v_plus(wp, R)) return fail(sp.z, wp, kS1);
        } else if (!inClosurePlus(wp)) {
          return fail(sp.z, wp, kS2);
        }

        ShellSample sm = shell_sample(r, R, density, a, b, false);
        Point2 wm = apply_inverse(H, sm.z);
        ++rep.checked;
        if (sm.strict) {
          if (!in_v_minus(wm, R)) return fail(sm.z, wm, kS3);
        } else if (!inClosureMinus(wm)) {
          return fail(sm.z, wm, kS4);
        }
      }
    }
  }

  const double tau = 2.0 * std::numbers::pi;
  for (int a = 0; a < density; ++a) {
    for (int b = 0; b < density; ++b) {
      double rx = static_cast<double>(a) / static_cast<double>(density - 1) * R;
      double ry = static_cast<double>(b) / static_cast<double>(density - 1) * R;
      Point2 z{std::polar(rx, tau * static_cast<double>(b) / static_cast<double>(density)),
               std::polar(ry, tau * static_cast<double>(a) / static_cast<double>(density))};
      Point2 wp = apply(H, z);
      ++rep.checked;
      if (!inClosurePlus(wp)) return fail(z, wp, kS2);
      Point2 wm = apply_inverse(H, z);
      ++rep.checked;
      if (!inClosureMinus(wm)) return fail(z, wm, kS4);
    }
  }

  rep.passed = true;
  return rep;
}

HenonMap make_henon(std::vector<HenonFactor> factors, const MakeOptions& opts) {
  if (factors.empty()) throw InvalidFactor("factor list is empty");
  for (std::size_t k = 0; k < factors.size(); ++k) validate_factor(factors[k], k);

  HenonMap H;
  H.factors_ = std::move(factors);
  const auto& fs = H.factors_;
  const std::size_t m = fs.size();

  long long d = 1;
  for (const HenonFactor& f : fs) {
    if (d > (1LL << 40) / f.degree()) throw TermExplosion("composite degree exceeds 2^40");
    d *= f.degree();
  }
  H.d_ = d;

  // Leading coefficient of the second forward component: factor j's lead
  // enters with exponent d_{j+1}*...*d_m.
  {
    Complex c{1.0, 0.0};
    long long suffix = 1;
    for (std::size_t j = m; j-- > 0;) {
      c *= ipow(fs[j].lead(), suffix);
      suffix *= fs[j].degree();
    }
    H.cH_ = c;
  }
  // Leading coefficient of the first inverse component: factor j contributes
  // (lead_j / delta_j)^{d_1*...*d_{j-1}} * b_j^{-d_j * d_1*...*d_{j-1}}.
  {
    Complex c{1.0, 0.0};
    long long prefix = 1;
    for (std::size_t j = 0; j < m; ++j) {
      c *= ipow(fs[j].lead() / fs[j].delta, prefix);
      c *= ipow(fs[j].b, -static_cast<long long>(fs[j].degree()) * prefix);
      prefix *= fs[j].degree();
    }
    H.cHp_ = c;
  }

  const std::size_t cap = opts.term_cap;
  {
    BiPolyPair fwd{BiPoly::variable_x(), BiPoly::variable_y()};
    for (const HenonFactor& f : fs) {
      BiPoly snd = eval_unipoly_at(f.p, fwd.second, cap) - fwd.first.scaled(f.delta);
      BiPoly fst = fwd.second.scaled(f.b);
      fwd = {std::move(fst), std::move(snd)};
    }
    H.forward_ = std::move(fwd);

    BiPolyPair inv{BiPoly::variable_x(), BiPoly::variable_y()};
    for (std::size_t j = m; j-- > 0;) {
      BiPoly u = inv.first.scaled(Complex{1.0, 0.0} / fs[j].b);
      BiPoly fst =
          (eval_unipoly_at(fs[j].p, u, cap) - inv.second).scaled(Complex{1.0, 0.0} / fs[j].delta);
      inv = {std::move(fst), std::move(u)};
    }
    H.inverse_ = std::move(inv);
  }

  if (d > 1000000) throw TermExplosion("composite degree too large for symbolic cross-check");
  const int di = static_cast<int>(d);
  {
    Complex symTop = H.forward_.second.coefficient(0, di);
    if (H.forward_.second.degree() != di || std::abs(symTop - H.cH_) > 1e-12 * (1.0 + std::abs(H.cH_)))
      throw CoefficientMismatch("closed-form top coefficient " + format_complex(H.cH_) +
                                " vs symbolic " + format_complex(symTop));
    Complex symTopInv = H.inverse_.first.coefficient(di, 0);
    if (H.inverse_.first.degree() != di ||
        std::abs(symTopInv - H.cHp_) > 1e-12 * (1.0 + std::abs(H.cHp_)))
      throw CoefficientMismatch("closed-form inverse top coefficient " + format_complex(H.cHp_) +
                                " vs symbolic " + format_complex(symTopInv));
  }

  H.qL1_ = (H.forward_.second - BiPoly::monomial(0, di, H.cH_)).coefficient_l1();
  H.qpL1_ = (H.inverse_.first - BiPoly::monomial(di, 0, H.cHp_)).coefficient_l1();

  double r0 = 1.0;
  for (const HenonFactor& f : fs) {
    double mass = 1.0 + std::abs(f.delta) + std::abs(f.b) + f.p.lower_l1() + std::abs(f.lead());
    double cand = std::pow(2.0 * mass / std::abs(f.lead()), 1.0 / static_cast<double>(f.degree() - 1));
    r0 = std::max(r0, cand);
  }
  double R = r0 + 1.0;
  while (true) {
    RadiusReport rep = validate_radius(H, R, opts.radius_density);
    if (rep.passed) break;
    R *= 2.0;
    if (R > static_cast<double>(1 << 20))
      throw RadiusSearchFailed("no radius up to 2^20 validated (statement: " +
                               std::string(rep.counterexample->statement) + ")");
  }
  H.R_ = R;

  H.growthC_ = std::max(
      growth_constant(H, Direction::forward, opts.growth_samples, opts.growth_seed),
      growth_constant(H, Direction::backward, opts.growth_samples, opts.growth_seed));
  return H;
}

HenonMap inverse_as_henon(const HenonMap& H, const MakeOptions& opts) {
  std::vector<HenonFactor> inv;
  const auto& fs = H.factors();
  inv.reserve(fs.size());
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    UniPoly p = it->p.compose(UniPoly::monomial(1, Complex{1.0, 0.0} / it->b))
                    .scaled(Complex{1.0, 0.0} / it->delta);
    inv.push_back(HenonFactor{Complex{1.0, 0.0} / it->b, Complex{1.0, 0.0} / it->delta, p});
  }
  return make_henon(std::move(inv), opts);
}

}  // namespace henon
