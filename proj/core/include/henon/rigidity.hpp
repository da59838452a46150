#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "henon/dynamics.hpp"

namespace henon {

// Coefficient form of a polynomial self-map plus its dynamical degree, the
// shape shared by factor compositions, their powers, and affine twists.
struct SymbolicMap {
  BiPolyPair components;
  long long degree = 1;
};

SymbolicMap to_symbolic(const HenonMap& H);
SymbolicMap to_symbolic(const AffineMap& a);
SymbolicMap compose(const SymbolicMap& outer, const SymbolicMap& inner,
                    std::size_t term_cap = kDefaultTermCap);
SymbolicMap symbolic_pow(const SymbolicMap& base, int k,
                         std::size_t term_cap = kDefaultTermCap);

enum class CommutationMethod { coefficient_solve, exhaustive_compare };

// Outcome of testing F o H = C o H o F for a diagonal C. The candidate
// deltas are always reported; witness is set only when every coefficient
// matches within 1e-9 * (1 + largest coefficient modulus) and both deltas are
// unimodular within 1e-9.
struct CommutationReport {
  std::optional<DiagonalMap> witness;
  double maxResidual = 0.0;
  CommutationMethod method = CommutationMethod::coefficient_solve;
  Complex candidateMinus{1, 0};
  Complex candidatePlus{1, 0};
  double coefficientScale = 1.0;
};

CommutationReport commutator_diagonal(const HenonMap& F, const HenonMap& H,
                                      std::size_t term_cap = kDefaultTermCap);

// Closed form c_H^{d_F} c_F / (c_F^{d_H} c_H) for the y-diagonal entry.
Complex delta_plus_from_coeffs(const HenonMap& F, const HenonMap& H);

// Closed form for deltaMinus^{d_H d_F} (root selection is left to coefficient
// matching; this is exposed read-only for cross-checks):
// (c'_F)^{d_H} c'_H / ((c'_H)^{d_F} c'_F).
Complex delta_minus_power(const HenonMap& F, const HenonMap& H);

struct ClassPair {
  bool fwdEscaping = false;
  bool bwdEscaping = false;
};

struct SharedSetDisagreement {
  int i = 0;
  int j = 0;
  Point2 z;
  Point2 fz;
  ClassPair zClass;
  ClassPair fzClass;
};

// Grid comparison of classifications of z vs F(z) under H. Every
// disagreement necessarily has an undecided (BoundedSoFar) side, so each is
// an undecided-resolution candidate rather than a refutation; agreement
// counts points whose forward and backward classes both match.
struct SharedSetReport {
  std::size_t total = 0;
  std::size_t agreeing = 0;
  double agreement = 0.0;
  std::vector<SharedSetDisagreement> disagreements;
};

using PointMap = std::function<Point2(Point2)>;

struct GridWindow {
  // Axes of the complex slice plane: the grid point (i, j) has coordinates
  // (a0, a1) = (a0min + i*step0, a1min + j*step1), endpoints included.
  double a0min = -2.0, a0max = 2.0;
  double a1min = -2.0, a1max = 2.0;
};

// Slice: complex-y plane at fixed x = sliceX. Requires res >= 16, N >= 1.
SharedSetReport shared_set_report(const PointMap& F, const HenonMap& H, Complex sliceX,
                                  const GridWindow& window, int res, int N);

struct IterateMatch {
  int m0 = 0;
  int n0 = 0;
  AffineMap sigma;
};

// Enumerates (m, n) with d_F^m = d_H^n in integer arithmetic, smallest
// common power first, and returns the first pair admitting an affine sigma
// with F^m = sigma o H^n (coefficient match within 1e-9 scale tolerance).
// TermExplosion messages name the (m, n) pair reached.
std::optional<IterateMatch> iterate_match(const SymbolicMap& F, const SymbolicMap& H,
                                          int maxM, int maxN,
                                          std::size_t term_cap = kDefaultTermCap);
std::optional<IterateMatch> iterate_match(const HenonMap& F, const HenonMap& H, int maxM,
                                          int maxN, std::size_t term_cap = kDefaultTermCap);

struct GeneratorDecomposition {
  AffineMap sigma;
  int power = 0;
};

// Writes F = sigma o R^r when d_R^r = d_F for some r <= maxR and the affine
// factor exists. Requires deg(R) >= 2.
std::optional<GeneratorDecomposition> generator_decompose(
    const SymbolicMap& F, const SymbolicMap& R, int maxR,
    std::size_t term_cap = kDefaultTermCap);
std::optional<GeneratorDecomposition> generator_decompose(
    const HenonMap& F, const HenonMap& R, int maxR,
    std::size_t term_cap = kDefaultTermCap);

// Solves target = sigma o base coefficient-wise; nullopt when no affine map
// fits within 1e-9 * (1 + largest coefficient modulus) or the linear part is
// singular.
std::optional<AffineMap> solve_affine_factor(const BiPolyPair& target,
                                             const BiPolyPair& base);

}  // namespace henon
