#include "henon/onedim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "henon/errors.hpp"

namespace henon {

PolyMap1D::PolyMap1D(UniPoly p) : p_(std::move(p)) {
  if (p_.degree() < 2)
    throw InvalidFactor("one-variable map needs degree >= 2, got " +
                        std::to_string(p_.degree()));
  for (int k = 0; k <= p_.degree(); ++k) {
    Complex c = p_.coeff(k);
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidFactor("non-finite coefficient");
  }
  lowerL1_ = p_.lower_l1();
  escapeRadius_ = std::max(2.0, (2.0 + lowerL1_) / std::abs(p_.leading()));

  // |p(z)| >= |lead| R^d - lowerL1 * R^(d-1) >= 2 R on the circle by the
  // radius choice; the sampled check guards the arithmetic, not the bound.
  const double tau = 2.0 * std::numbers::pi;
  for (int attempt = 0; attempt < 60; ++attempt) {
    bool ok = true;
    for (int k = 0; k < 64 && ok; ++k) {
      Complex z = std::polar(escapeRadius_, tau * k / 64.0);
      // Slack of a few ulps so exact-equality radii are not rejected.
      if (std::abs(p_.eval(z)) < 2.0 * escapeRadius_ * (1.0 - 1e-12)) ok = false;
    }
    if (ok) return;
    escapeRadius_ *= 2.0;
  }
  throw InvalidFactor("no certified escape radius found");
}

Classification classify_1d(const PolyMap1D& P, Complex z, int maxIter) {
  if (maxIter < 1) throw std::invalid_argument("classify_1d: maxIter >= 1 required");
  for (int n = 0;; ++n) {
    if (std::abs(z) >= P.escape_radius()) return {true, n};
    if (n == maxIter) return {false, maxIter};
    z = P.eval(z);
  }
}

GreenValue green_1d(const PolyMap1D& P, Complex z, double tol, int maxIter) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("green_1d: tol >= 1e-12 required");
  if (maxIter < 1) throw std::invalid_argument("green_1d: maxIter >= 1 required");

  const double d = static_cast<double>(P.degree());
  const double cAbs = std::abs(P.lead());
  const double M = P.lower_l1();
  const double logc = std::abs(std::log(cAbs));
  // Tail of d^{-n} log |z_n|: each later ratio |z_{k+1}| / |z_k|^d sits in
  // |lead| * [1 - u, 1 + u] with u = M / (|lead| |z_k|) < 1 past the radius.
  auto tail = [&](int n, double mag) {
    double u = M / (cAbs * mag);
    double lam = u < 1.0 ? -std::log1p(-u) : std::numeric_limits<double>::infinity();
    return std::pow(d, -static_cast<double>(n)) / (d - 1.0) * (logc + lam);
  };

  GreenValue g;
  int n = 0;
  while (std::abs(z) < P.escape_radius()) {
    if (n == maxIter) {
      // Undecided: g(z) = d^{-N} g(z_N) with |z_N| < R, and g is at most
      // log R + tail(0, R) on that disc.
      const double R = P.escape_radius();
      g.errorBound = std::pow(d, -static_cast<double>(maxIter)) * (std::log(R) + tail(0, R));
      g.toleranceMet = g.errorBound <= tol;
      g.iterations = maxIter;
      return g;
    }
    z = P.eval(z);
    ++n;
  }

  const double guard = std::pow(1e290 / (cAbs + M), 1.0 / d);
  for (int extra = 0; extra < 256; ++extra) {
    if (tail(n, std::abs(z)) <= tol) break;
    if (std::abs(z) > guard) break;
    z = P.eval(z);
    ++n;
  }
  g.value = std::pow(d, -static_cast<double>(n)) * std::log(std::abs(z));
  g.errorBound = tail(n, std::abs(z));
  g.iterations = n;
  g.escaped = true;
  g.toleranceMet = g.errorBound <= tol;
  return g;
}

std::optional<Affine1D> beardon_sigma(const PolyMap1D& P, const PolyMap1D& Q) {
  UniPoly pq = P.p().compose(Q.p());
  UniPoly qp = Q.p().compose(P.p());
  int D = pq.degree();
  if (qp.degree() != D) return std::nullopt;

  Complex a = pq.leading() / qp.leading();
  if (std::abs(std::abs(a) - 1.0) > 1e-9) return std::nullopt;
  Complex b = pq.coeff(0) - a * qp.coeff(0);

  double scale = 0.0;
  for (int k = 0; k <= D; ++k)
    scale = std::max({scale, std::abs(pq.coeff(k)), std::abs(qp.coeff(k))});
  const double tol = 1e-9 * (1.0 + scale);
  for (int k = 0; k <= D; ++k) {
    Complex want = a * qp.coeff(k) + (k == 0 ? b : Complex{});
    if (std::abs(pq.coeff(k) - want) > tol) return std::nullopt;
  }
  return Affine1D{a, b};
}

}  // namespace henon
