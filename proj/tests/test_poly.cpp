#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "henon/errors.hpp"
#include "henon/poly.hpp"

using namespace henon;

namespace {

BiPoly random_bipoly(std::mt19937_64& rng, int maxDeg, int terms) {
  std::uniform_int_distribution<int> deg(0, maxDeg);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  BiPoly p;
  for (int t = 0; t < terms; ++t)
    p = p + BiPoly::monomial(deg(rng), deg(rng), Complex{c(rng), c(rng)});
  return p;
}

}  // namespace

TEST_CASE("ipow") {
  CHECK(ipow(Complex{2, 0}, 10) == Complex{1024, 0});
  CHECK(ipow(Complex{2, 0}, 0) == Complex{1, 0});
  CHECK(ipow(Complex{2, 0}, -2) == Complex{0.25, 0});
  CHECK(std::abs(ipow(Complex{0, 1}, 4) - Complex{1, 0}) < 1e-15);
}

TEST_CASE("parse simple quadratic") {
  UniPoly p = parse_polynomial("y^2 - 1");
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == Complex{-1, 0});
  CHECK(p.coeff(1) == Complex{0, 0});
  CHECK(p.coeff(2) == Complex{1, 0});
}

TEST_CASE("parse forms") {
  CHECK(parse_polynomial("y") == UniPoly::monomial(1));
  CHECK(parse_polynomial("3*y^3") == UniPoly::monomial(3, {3, 0}));
  CHECK(parse_polynomial("2y^2") == UniPoly::monomial(2, {2, 0}));
  CHECK(parse_polynomial(" y ^ 2 - 1 ") == parse_polynomial("y^2-1"));
  CHECK(parse_polynomial("0") == UniPoly());

  UniPoly q = parse_polynomial("(1+2i)*y^3 - i");
  CHECK(q.coeff(3) == Complex{1, 2});
  CHECK(q.coeff(0) == Complex{0, -1});

  UniPoly r = parse_polynomial("(y+1)^2");
  CHECK(r.coeff(0) == Complex{1, 0});
  CHECK(r.coeff(1) == Complex{2, 0});
  CHECK(r.coeff(2) == Complex{1, 0});

  CHECK(parse_polynomial("-y^2 + 0.5") == UniPoly({{0.5, 0}, {0, 0}, {-1, 0}}));
}

TEST_CASE("parse errors carry position and expectation") {
  CHECK_THROWS_AS(parse_polynomial("y^"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("y +"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("(1+2i"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("^2"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("y^1000"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial(""), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("y$"), SyntaxError);

  try {
    parse_polynomial("y^");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 2);
    CHECK(!e.expected().empty());
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }

  try {
    parse_polynomial("y^-1");
    FAIL("expected NegativeExponent");
  } catch (const NegativeExponent& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("print then parse round trip") {
  const char* samples[] = {"y^2 - 1", "(1+2i)*y^3 - i", "0", "5", "-y^4 + 0.5*y - 2i", "y"};
  for (const char* s : samples) {
    UniPoly p = parse_polynomial(s);
    CHECK(parse_polynomial(p.to_string()) == p);
  }
  CHECK(parse_polynomial("y^2 - 1").to_string() == "-1 + y^2");
}

TEST_CASE("unipoly eval and guard") {
  UniPoly p({{1, 0}, {-2, 0}, {0, 0}, {1, 0}});  // y^3 - 2y + 1
  CHECK(p.eval({2, 0}) == Complex{5, 0});
  CHECK(UniPoly().eval({3, 0}) == Complex{0, 0});
  CHECK_THROWS_AS(UniPoly::monomial(2).eval({1e200, 0}), Overflow);
}

TEST_CASE("unipoly arithmetic") {
  UniPoly a = parse_polynomial("y + 1");
  UniPoly b = parse_polynomial("y - 1");
  CHECK(a * b == parse_polynomial("y^2 - 1"));
  CHECK(a + b == parse_polynomial("2*y"));
  CHECK(a - b == parse_polynomial("2"));
  CHECK(a.scaled({2, 0}) == parse_polynomial("2*y + 2"));
  CHECK(UniPoly::monomial(2).compose(a) == parse_polynomial("y^2 + 2*y + 1"));

  UniPoly c = parse_polynomial("y^3 + 2*y - 3i");
  CHECK(c.lower_l1() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.leading() == Complex{1, 0});
  CHECK(UniPoly({{1, 0}, {0, 0}}).degree() == 0);  // trailing zero trimmed
}

TEST_CASE("bipoly basics") {
  BiPoly s = BiPoly::variable_x() + BiPoly::variable_y();
  BiPoly sq = s.mul(s);
  CHECK(sq.to_string() == "y^2 + 2*x*y + x^2");
  CHECK(sq.degree() == 2);
  CHECK(sq.coefficient(1, 1) == Complex{2, 0});
  CHECK(sq.coefficient(3, 0) == Complex{0, 0});
  CHECK(sq.term_count() == 3);
  CHECK(sq.eval({2, 0}, {3, 0}) == Complex{25, 0});
  CHECK(sq.max_coefficient_modulus() == doctest::Approx(2.0));
  CHECK(sq.coefficient_l1() == doctest::Approx(4.0));
  CHECK((sq - sq).is_zero());
  CHECK(BiPoly::from_unipoly_y(parse_polynomial("y^2 - 1")).coefficient(0, 2) == Complex{1, 0});
  CHECK(BiPoly::from_unipoly_x(parse_polynomial("y^2 - 1")).coefficient(2, 0) == Complex{1, 0});
}

TEST_CASE("bipoly worked evaluations") {
  // 3*(y^3 - x)^3 - y at (0, 2): inner 8, so 3*512 - 2.
  BiPoly cubicInner = BiPoly::monomial(0, 3, {1, 0}) - BiPoly::variable_x();
  BiPoly p1 = cubicInner.mul(cubicInner).mul(cubicInner).scaled({3, 0}) -
              BiPoly::variable_y();
  CHECK(p1.eval({0, 0}, {2, 0}) == Complex{1534, 0});

  // 3*(y^2 - x)^3 - y at (0, 2): inner 4, so 3*64 - 2.
  BiPoly quadInner = BiPoly::monomial(0, 2, {1, 0}) - BiPoly::variable_x();
  BiPoly p2 = quadInner.mul(quadInner).mul(quadInner).scaled({3, 0}) -
              BiPoly::variable_y();
  CHECK(p2.eval({0, 0}, {2, 0}) == Complex{190, 0});
}

TEST_CASE("bipoly eval overflow guard") {
  BiPoly p = BiPoly::monomial(2, 0, {1, 0}) + BiPoly::monomial(0, 2, {1, 0});
  CHECK_THROWS_AS(p.eval({1e200, 0}, {0, 0}), Overflow);
}

TEST_CASE("compose agrees with pointwise evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pt(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    BiPoly outer = random_bipoly(rng, 3, 4);
    BiPolyPair inner{random_bipoly(rng, 2, 3), random_bipoly(rng, 2, 3)};
    BiPoly comp = compose_into(outer, inner);
    for (int k = 0; k < 5; ++k) {
      Complex x{pt(rng), pt(rng)}, y{pt(rng), pt(rng)};
      Complex direct = outer.eval(inner.first.eval(x, y), inner.second.eval(x, y));
      Complex via = comp.eval(x, y);
      CHECK(std::abs(direct - via) <= 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("composition is associative on coefficients") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    BiPolyPair A{random_bipoly(rng, 2, 3), random_bipoly(rng, 2, 3)};
    BiPolyPair B{random_bipoly(rng, 2, 3), random_bipoly(rng, 2, 3)};
    BiPolyPair C{random_bipoly(rng, 2, 3), random_bipoly(rng, 2, 3)};
    BiPolyPair left = compose_maps(compose_maps(A, B), C);
    BiPolyPair right = compose_maps(A, compose_maps(B, C));
    CHECK(coefficients_close(left, right, 1e-9));
  }
}

TEST_CASE("term cap raises TermExplosion") {
  BiPoly dense;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) dense = dense + BiPoly::monomial(i, j, {1, 0});
  CHECK_THROWS_AS(dense.mul(dense, 5), TermExplosion);
  BiPolyPair inner{dense, dense};
  CHECK_THROWS_AS(compose_into(dense, inner, 5), TermExplosion);
}

TEST_CASE("coefficients_close tolerance semantics") {
  BiPoly a = BiPoly::monomial(1, 1, {1, 0});
  BiPoly b = BiPoly::monomial(1, 1, {1 + 1e-12, 0});
  CHECK(coefficients_close(a, b, 1e-9));
  CHECK(!coefficients_close(a, a + BiPoly::constant({1e-3, 0}), 1e-9));
  CHECK(coefficients_close(BiPoly(), BiPoly(), 1e-12));
}

TEST_CASE("formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1534.0) == "1534");
  CHECK(format_complex({0, 1}) == "1i");
  CHECK(format_complex({2, -3}) == "(2 - 3i)");
  CHECK(format_complex({-1, 0}) == "-1");
  // shortest round-trip property
  double v = 0.1 + 0.2;
  CHECK(std::stod(format_double(v)) == v);
}
