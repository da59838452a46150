#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace henon {

using Complex = std::complex<double>;

inline constexpr double kEvalOverflowGuard = 1e300;
inline constexpr std::size_t kDefaultTermCap = 1'000'000;

// z^e by binary powering; e may be negative (reciprocal of the positive power).
Complex ipow(Complex z, long long e);

// Dense univariate polynomial over C, coefficients lowest-degree first.
// Canonical form: trailing exact-zero coefficients are trimmed, so the zero
// polynomial has an empty coefficient vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);

  static UniPoly monomial(int k, Complex c = {1.0, 0.0});

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  // Coefficient of y^k; 0 beyond the stored range.
  Complex coeff(int k) const;

  // Horner evaluation; throws Overflow past the 1e300 guard.
  Complex eval(Complex y) const;

  // Sum of |c_k| over all lower (non-leading) coefficients.
  double lower_l1() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(Complex s) const;
  // this(inner(y)).
  UniPoly compose(const UniPoly& inner) const;

  // Canonical text form in the expression grammar (variable y, terms in
  // ascending degree, shortest round-trip numerals).
  std::string to_string() const;

  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

// Parses the expression grammar: signed sums of terms c, c*y^k, y^k, y with
// complex literals a, bi, (a+bi). Whitespace is insignificant. Throws
// SyntaxError with position/expected-token info, NegativeExponent on y^-k.
UniPoly parse_polynomial(std::string_view text);

struct BiTerm {
  int i = 0;  // power of x
  int j = 0;  // power of y
  Complex c;
};

// Sparse bivariate polynomial over C. Terms are kept sorted by (i, j)
// ascending with unique keys; exact-zero coefficients are never stored.
class BiPoly {
 public:
  BiPoly() = default;

  static BiPoly constant(Complex c);
  static BiPoly monomial(int i, int j, Complex c);
  static BiPoly variable_x() { return monomial(1, 0, {1.0, 0.0}); }
  static BiPoly variable_y() { return monomial(0, 1, {1.0, 0.0}); }
  // p(y) as a bivariate polynomial in y alone (resp. x alone).
  static BiPoly from_unipoly_y(const UniPoly& p);
  static BiPoly from_unipoly_x(const UniPoly& p);

  bool is_zero() const { return terms_.empty(); }
  // Max total degree i+j; -1 for the zero polynomial.
  int degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<BiTerm>& terms() const { return terms_; }
  Complex coefficient(int i, int j) const;
  double max_coefficient_modulus() const;
  double coefficient_l1() const;

  // Removes terms with |c| <= eps. Tolerance pruning is opt-in only; the
  // arithmetic in this module never drops small nonzero coefficients.
  BiPoly pruned(double eps) const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly scaled(Complex s) const;
  BiPoly mul(const BiPoly& o, std::size_t term_cap = kDefaultTermCap) const;

  // Horner-style evaluation grouped in y then x, terms consumed in the fixed
  // (i, j)-ascending order. Throws Overflow past the 1e300 guard.
  Complex eval(Complex x, Complex y) const;

  // Terms in (i, j)-ascending order with shortest round-trip numerals.
  std::string to_string() const;

  bool operator==(const BiPoly& o) const;

 private:
  static BiPoly from_sorted(std::vector<BiTerm> terms);
  std::vector<BiTerm> terms_;
  friend BiPoly bipoly_from_accumulator(std::vector<BiTerm>&& sorted);
};

// Polynomial self-map of C^2: (x, y) -> (first(x,y), second(x,y)).
struct BiPolyPair {
  BiPoly first;
  BiPoly second;
};

// outer with inner substituted for (x, y) in both components. Exact
// coefficient arithmetic; throws TermExplosion past term_cap.
BiPoly compose_into(const BiPoly& outer, const BiPolyPair& inner,
                    std::size_t term_cap = kDefaultTermCap);
BiPolyPair compose_maps(const BiPolyPair& outer, const BiPolyPair& inner,
                        std::size_t term_cap = kDefaultTermCap);

// Coefficient-wise |a-b| <= tol * (1 + |a| + |b|) over the union support.
bool coefficients_close(const BiPoly& a, const BiPoly& b, double tol = 1e-9);
bool coefficients_close(const BiPolyPair& a, const BiPolyPair& b, double tol = 1e-9);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double v);
std::string format_complex(Complex c);

}  // namespace henon
