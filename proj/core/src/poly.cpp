#include "henon/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "henon/errors.hpp"

namespace henon {

Complex ipow(Complex z, long long e) {
  if (e < 0) return Complex{1.0, 0.0} / ipow(z, -e);
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string out = "(" + format_double(c.real());
  out += c.imag() < 0 ? " - " : " + ";
  out += format_double(std::abs(c.imag()));
  out += "i)";
  return out;
}

namespace {

// Appends "c * varpart" to out with the additive separator, folding the sign
// of real or pure-imaginary c into the separator. varpart empty means a bare
// constant term.
void append_term(std::string& out, bool& firstPrinted, Complex c, const std::string& varpart) {
  bool neg = (c.imag() == 0.0 && c.real() < 0.0) || (c.real() == 0.0 && c.imag() < 0.0);
  if (!firstPrinted) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (neg) c = -c;
  firstPrinted = true;
  if (varpart.empty()) {
    out += format_complex(c);
    return;
  }
  if (c == Complex{1.0, 0.0}) {
    out += varpart;
  } else {
    out += format_complex(c);
    out += "*";
    out += varpart;
  }
}

std::string power_of(const char* var, int k) {
  if (k == 0) return {};
  std::string s = var;
  if (k > 1) {
    s += "^";
    s += std::to_string(k);
  }
  return s;
}

void check_eval_guard(Complex v) {
  if (!(std::abs(v) <= kEvalOverflowGuard)) throw Overflow();
}

}  // namespace

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(int k, Complex c) {
  if (k < 0) throw std::invalid_argument("monomial power must be nonnegative");
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return UniPoly(std::move(v));
}

Complex UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex UniPoly::eval(Complex y) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * y + *it;
    check_eval_guard(acc);
  }
  return acc;
}

double UniPoly::lower_l1() const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) s += std::abs(coeffs_[k]);
  return s;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Complex> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    Complex a = k < coeffs_.size() ? coeffs_[k] : Complex{};
    Complex b = k < o.coeffs_.size() ? o.coeffs_[k] : Complex{};
    v[k] = a + b;
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-1.0); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Complex> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t a = 0; a < coeffs_.size(); ++a)
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) v[a + b] += coeffs_[a] * o.coeffs_[b];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::scaled(Complex s) const {
  std::vector<Complex> v = coeffs_;
  for (auto& c : v) c *= s;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * inner + UniPoly({*it});
  return acc;
}

std::string UniPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = false;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == Complex{}) continue;
    append_term(out, first, coeffs_[k], power_of("y", static_cast<int>(k)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser. Grammar, with implicit multiplication between adjacent primaries:
//   expr    := [sign] term (sign term)*
//   term    := primary (('*' primary) | primary)*
//   primary := number ['i'] | 'i' | 'y' | '(' expr ')' , optionally '^' digits
// Positions in errors are byte offsets into the input.

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  std::string found_here() const { return eof() ? std::string() : std::string(1, peek()); }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
  }

  static bool starts_primary(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 'y' ||
           c == '(';
  }

  double parse_number() {
    double v = 0.0;
    auto res = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr == s.data() + pos)
      throw SyntaxError(pos, "a number", found_here());
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return v;
  }

  long long parse_exponent() {
    skip_ws();
    if (!eof() && peek() == '-') throw NegativeExponent(pos);
    if (!eof() && peek() == '+') ++pos;
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError(pos, "an exponent", found_here());
    long long e = 0;
    auto res = std::from_chars(s.data() + pos, s.data() + s.size(), e);
    if (res.ec != std::errc()) throw SyntaxError(pos, "an exponent", found_here());
    std::size_t at = pos;
    pos = static_cast<std::size_t>(res.ptr - s.data());
    if (e > 999) throw SyntaxError(at, "an exponent not exceeding 999", std::to_string(e));
    return e;
  }

  UniPoly parse_primary() {
    skip_ws();
    if (eof()) throw SyntaxError(pos, "a term", "");
    char c = peek();
    UniPoly base;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = parse_number();
      if (!eof() && peek() == 'i') {
        ++pos;
        base = UniPoly({Complex{0.0, v}});
      } else {
        base = UniPoly({Complex{v, 0.0}});
      }
    } else if (c == 'i') {
      ++pos;
      base = UniPoly({Complex{0.0, 1.0}});
    } else if (c == 'y') {
      ++pos;
      base = UniPoly::monomial(1);
    } else if (c == '(') {
      ++pos;
      base = parse_expr();
      skip_ws();
      if (eof() || peek() != ')') throw SyntaxError(pos, "')'", found_here());
      ++pos;
    } else {
      throw SyntaxError(pos, "a term", found_here());
    }
    skip_ws();
    if (!eof() && peek() == '^') {
      std::size_t caret = pos;
      ++pos;
      long long e = parse_exponent();
      if (base.degree() > 0 && base.degree() * e > 10000)
        throw SyntaxError(caret, "a power of degree at most 10000", std::to_string(e));
      UniPoly acc({Complex{1.0, 0.0}});
      UniPoly p = base;
      long long k = e;
      while (k > 0) {
        if (k & 1) acc = acc * p;
        k >>= 1;
        if (k) p = p * p;
      }
      base = acc;
    }
    return base;
  }

  UniPoly parse_term() {
    UniPoly acc = parse_primary();
    while (true) {
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos;
        acc = acc * parse_primary();
      } else if (!eof() && starts_primary(peek())) {
        acc = acc * parse_primary();
      } else {
        break;
      }
    }
    return acc;
  }

  UniPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (!eof() && (peek() == '+' || peek() == '-')) {
      neg = peek() == '-';
      ++pos;
    }
    UniPoly acc = parse_term();
    if (neg) acc = acc.scaled(-1.0);
    while (true) {
      skip_ws();
      if (eof() || (peek() != '+' && peek() != '-')) break;
      bool minus = peek() == '-';
      ++pos;
      UniPoly t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }
};

}  // namespace

UniPoly parse_polynomial(std::string_view text) {
  Parser p{text};
  UniPoly r = p.parse_expr();
  p.skip_ws();
  if (!p.eof()) throw SyntaxError(p.pos, "end of input", p.found_here());
  return r;
}

// ---------------------------------------------------------------------------
// BiPoly. Terms kept sorted by (i, j), exact zeros never stored.

namespace {

bool term_key_less(const BiTerm& a, const BiTerm& b) {
  return a.i != b.i ? a.i < b.i : a.j < b.j;
}

}  // namespace

BiPoly bipoly_from_accumulator(std::vector<BiTerm>&& sortedUnique) {
  BiPoly r;
  r.terms_ = std::move(sortedUnique);
  return r;
}

BiPoly BiPoly::from_sorted(std::vector<BiTerm> terms) {
  std::sort(terms.begin(), terms.end(), term_key_less);
  std::vector<BiTerm> merged;
  merged.reserve(terms.size());
  for (const BiTerm& t : terms) {
    if (!merged.empty() && merged.back().i == t.i && merged.back().j == t.j) {
      merged.back().c += t.c;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const BiTerm& t) { return t.c == Complex{}; });
  return bipoly_from_accumulator(std::move(merged));
}

BiPoly BiPoly::constant(Complex c) { return monomial(0, 0, c); }

BiPoly BiPoly::monomial(int i, int j, Complex c) {
  if (i < 0 || j < 0) throw std::invalid_argument("monomial powers must be nonnegative");
  if (c == Complex{}) return BiPoly();
  return from_sorted({BiTerm{i, j, c}});
}

BiPoly BiPoly::from_unipoly_y(const UniPoly& p) {
  std::vector<BiTerm> v;
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != Complex{}) v.push_back(BiTerm{0, k, p.coeff(k)});
  return bipoly_from_accumulator(std::move(v));
}

BiPoly BiPoly::from_unipoly_x(const UniPoly& p) {
  std::vector<BiTerm> v;
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != Complex{}) v.push_back(BiTerm{k, 0, p.coeff(k)});
  return bipoly_from_accumulator(std::move(v));
}

int BiPoly::degree() const {
  int d = -1;
  for (const BiTerm& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

Complex BiPoly::coefficient(int i, int j) const {
  BiTerm key{i, j, Complex{}};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, term_key_less);
  if (it == terms_.end() || it->i != i || it->j != j) return {};
  return it->c;
}

double BiPoly::max_coefficient_modulus() const {
  double m = 0.0;
  for (const BiTerm& t : terms_) m = std::max(m, std::abs(t.c));
  return m;
}

double BiPoly::coefficient_l1() const {
  double s = 0.0;
  for (const BiTerm& t : terms_) s += std::abs(t.c);
  return s;
}

BiPoly BiPoly::pruned(double eps) const {
  std::vector<BiTerm> v;
  v.reserve(terms_.size());
  for (const BiTerm& t : terms_)
    if (std::abs(t.c) > eps) v.push_back(t);
  return bipoly_from_accumulator(std::move(v));
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  std::vector<BiTerm> v;
  v.reserve(terms_.size() + o.terms_.size());
  std::size_t a = 0, b = 0;
  while (a < terms_.size() || b < o.terms_.size()) {
    if (b == o.terms_.size() ||
        (a < terms_.size() && term_key_less(terms_[a], o.terms_[b]))) {
      v.push_back(terms_[a++]);
    } else if (a == terms_.size() || term_key_less(o.terms_[b], terms_[a])) {
      v.push_back(o.terms_[b++]);
    } else {
      Complex c = terms_[a].c + o.terms_[b].c;
      if (c != Complex{}) v.push_back(BiTerm{terms_[a].i, terms_[a].j, c});
      ++a;
      ++b;
    }
  }
  return bipoly_from_accumulator(std::move(v));
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o.scaled(-1.0); }

BiPoly BiPoly::scaled(Complex s) const {
  std::vector<BiTerm> v;
  v.reserve(terms_.size());
  for (const BiTerm& t : terms_) {
    Complex c = t.c * s;
    if (c != Complex{}) v.push_back(BiTerm{t.i, t.j, c});
  }
  return bipoly_from_accumulator(std::move(v));
}

BiPoly BiPoly::mul(const BiPoly& o, std::size_t termCap) const {
  std::map<std::pair<int, int>, Complex> acc;
  for (const BiTerm& a : terms_) {
    for (const BiTerm& b : o.terms_) {
      acc[{a.i + b.i, a.j + b.j}] += a.c * b.c;
      if (acc.size() > termCap)
        throw TermExplosion("product exceeds " + std::to_string(termCap) + " terms");
    }
  }
  std::vector<BiTerm> v;
  v.reserve(acc.size());
  for (const auto& [key, c] : acc)
    if (c != Complex{}) v.push_back(BiTerm{key.first, key.second, c});
  return bipoly_from_accumulator(std::move(v));
}

Complex BiPoly::eval(Complex x, Complex y) const {
  if (terms_.empty()) return {};
  // Sparse Horner: groups of equal i descending, Horner in y inside each group.
  Complex total{};
  bool haveTotal = false;
  int prevI = 0;
  std::size_t gEnd = terms_.size();
  while (gEnd > 0) {
    int i = terms_[gEnd - 1].i;
    std::size_t gBegin = gEnd;
    while (gBegin > 0 && terms_[gBegin - 1].i == i) --gBegin;
    Complex acc{};
    bool haveAcc = false;
    int prevJ = 0;
    for (std::size_t t = gEnd; t > gBegin; --t) {
      const BiTerm& term = terms_[t - 1];
      if (!haveAcc) {
        acc = term.c;
        haveAcc = true;
      } else {
        acc = acc * ipow(y, prevJ - term.j) + term.c;
        check_eval_guard(acc);
      }
      prevJ = term.j;
    }
    acc *= ipow(y, prevJ);
    check_eval_guard(acc);
    if (!haveTotal) {
      total = acc;
      haveTotal = true;
    } else {
      total = total * ipow(x, prevI - i) + acc;
      check_eval_guard(total);
    }
    prevI = i;
    gEnd = gBegin;
  }
  total *= ipow(x, prevI);
  check_eval_guard(total);
  return total;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = false;
  for (const BiTerm& t : terms_) {
    std::string xs = power_of("x", t.i);
    std::string ys = power_of("y", t.j);
    std::string var = xs.empty() ? ys : (ys.empty() ? xs : xs + "*" + ys);
    append_term(out, first, t.c, var);
  }
  return out;
}

bool BiPoly::operator==(const BiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].i != o.terms_[k].i || terms_[k].j != o.terms_[k].j ||
        terms_[k].c != o.terms_[k].c)
      return false;
  }
  return true;
}

BiPoly compose_into(const BiPoly& outer, const BiPolyPair& inner, std::size_t termCap) {
  int mi = 0, mj = 0;
  for (const BiTerm& t : outer.terms()) {
    mi = std::max(mi, t.i);
    mj = std::max(mj, t.j);
  }
  std::vector<BiPoly> xp(static_cast<std::size_t>(mi) + 1), yp(static_cast<std::size_t>(mj) + 1);
  xp[0] = BiPoly::constant(Complex{1.0, 0.0});
  yp[0] = xp[0];
  for (int k = 1; k <= mi; ++k) xp[k] = xp[k - 1].mul(inner.first, termCap);
  for (int k = 1; k <= mj; ++k) yp[k] = yp[k - 1].mul(inner.second, termCap);
  BiPoly acc;
  for (const BiTerm& t : outer.terms())
    acc = acc + xp[static_cast<std::size_t>(t.i)].mul(yp[static_cast<std::size_t>(t.j)], termCap).scaled(t.c);
  return acc;
}

BiPolyPair compose_maps(const BiPolyPair& outer, const BiPolyPair& inner, std::size_t termCap) {
  return {compose_into(outer.first, inner, termCap), compose_into(outer.second, inner, termCap)};
}

bool coefficients_close(const BiPoly& a, const BiPoly& b, double tol) {
  std::size_t ia = 0, ib = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (ia < ta.size() || ib < tb.size()) {
    Complex ca{}, cb{};
    if (ib == tb.size() || (ia < ta.size() && term_key_less(ta[ia], tb[ib]))) {
      ca = ta[ia++].c;
    } else if (ia == ta.size() || term_key_less(tb[ib], ta[ia])) {
      cb = tb[ib++].c;
    } else {
      ca = ta[ia++].c;
      cb = tb[ib++].c;
    }
    if (std::abs(ca - cb) > tol * (1.0 + std::abs(ca) + std::abs(cb))) return false;
  }
  return true;
}

bool coefficients_close(const BiPolyPair& a, const BiPolyPair& b, double tol) {
  return coefficients_close(a.first, b.first, tol) && coefficients_close(a.second, b.second, tol);
}

}  // namespace henon
