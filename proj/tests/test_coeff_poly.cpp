#include <doctest.h>

#include <random>
#include <stdexcept>

#include "labkit/charpoly.hpp"
#include "labkit/linalg.hpp"
#include "labkit/modular.hpp"
#include "labkit/poly.hpp"
#include "labkit/poly_io.hpp"
#include "labkit/scalar.hpp"
#include "test_support.hpp"

using namespace labkit;
using labkit::test::x;

namespace {

// det by first-row cofactor expansion, kept deliberately naive.
Poly cofactor_det(const PolyMatrix& m)
{
  const std::size_t n = m.size();
  if (n == 0)
    return Poly(1);
  if (n == 1)
    return m[0][0];
  Poly det;
  for (std::size_t c = 0; c < n; ++c) {
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Poly term = m[0][c] * cofactor_det(minor);
    if (c % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

// Coefficients of det(m - T) via the cofactor oracle, with T as variable t.
std::vector<Poly> cofactor_charpoly(PolyMatrix m, VarIndex t)
{
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i][i] -= x(t);
  const Poly det = cofactor_det(m);
  std::vector<Poly> coeffs(m.size() + 1);
  for (const auto& [mono, c] : det.terms()) {
    const std::uint32_t e = mono.exponent(t);
    Monomial rest = mono;
    for (std::uint32_t k = 0; k < e; ++k)
      rest = rest.lowered(t);
    coeffs.at(e).add_term(rest, c);
  }
  return coeffs;
}

} // namespace

TEST_CASE("GaussScalar keeps reduced rational parts")
{
  const GaussScalar half(2, 4);
  CHECK(half == GaussScalar(1, 2));
  CHECK(half.re().get_num() == 1);
  CHECK(half.re().get_den() == 2);

  const GaussScalar neg(1, -2);
  CHECK(neg.re().get_den() > 0);
  CHECK(neg == GaussScalar(-1, 2));

  CHECK(GaussScalar().is_zero());
  CHECK(GaussScalar(0, 7) == GaussScalar());
  CHECK(GaussScalar(0, 7).re().get_den() == 1);
}

TEST_CASE("GaussScalar two-argument constructor is numerator over denominator")
{
  // Not (re, im): the imaginary unit has its own factory.
  CHECK(GaussScalar(0, -1).is_zero());
  CHECK(GaussScalar(3, 1).is_real());
  const GaussScalar i = GaussScalar::imaginary_unit();
  CHECK(i.re() == 0);
  CHECK(i.im() == 1);
  CHECK(i * i == GaussScalar(-1));
  CHECK(i.conj() == -i);
}

TEST_CASE("GaussScalar arithmetic is exact")
{
  std::mt19937_64 rng(11);
  const GaussScalar i = GaussScalar::imaginary_unit();
  for (int t = 0; t < 200; ++t) {
    const GaussScalar a = test::small_rational(rng) + test::small_rational(rng) * i;
    const GaussScalar b = test::small_rational(rng) + test::small_rational(rng) * i;
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    GaussScalar acc = a;
    acc.add_product(a, b);
    CHECK(acc == a + a * b);
  }
}

TEST_CASE("ring operations on small examples")
{
  CHECK((x(0) + x(1)) * (x(0) - x(1)) == x(0) * x(0) - x(1) * x(1));
  const Poly f = x(0) * x(1) + Poly(3);
  CHECK((f * Poly()).is_zero());
  CHECK((f * Poly()).terms().empty());
  const Poly sum = (x(0) * x(0) + x(1) * x(1) + x(2) * x(2)) + (-(x(0) * x(0)));
  CHECK(sum == x(1) * x(1) + x(2) * x(2));
  CHECK(sum.size() == 2);
  CHECK((f - f).is_zero());
  CHECK(f * GaussScalar(0) == Poly());
}

TEST_CASE("monomials store no zero exponents and cache the degree")
{
  const Monomial m({{2, 1}, {0, 2}, {2, 2}, {5, 0}});
  CHECK(m.factors().size() == 2);
  CHECK(m.degree() == 5);
  CHECK(m.exponent(2) == 3);
  CHECK(m.exponent(5) == 0);
  CHECK(Monomial().is_one());
}

TEST_CASE("terms are kept in descending graded-lex order")
{
  const Poly f = x(1) + x(0) * x(0) + Poly(1) + x(0) * x(1) + x(0);
  const Monomial* prev = nullptr;
  for (const auto& [m, c] : f.terms()) {
    if (prev)
      CHECK(grlex_less(m, *prev));
    prev = &m;
  }
  CHECK(format_poly(f) == "x0^2 + x0*x1 + x0 + x1 + 1");
}

TEST_CASE("ring axioms hold on random triples")
{
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Poly a = test::random_poly(rng, 4, 3, 5);
    const Poly b = test::random_poly(rng, 4, 3, 5);
    const Poly c = test::random_poly(rng, 4, 3, 5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    const Poly ab = a * b;
    for (const auto& [m, coeff] : ab.terms())
      CHECK_FALSE(coeff.is_zero());
  }
}

TEST_CASE("partial derivatives")
{
  const Poly f = x(0) * x(0) * x(1);
  CHECK(partial_derivative(f, 0, 3) == Poly(2) * x(0) * x(1));
  CHECK(partial_derivative(f, 2, 3).is_zero());
  CHECK(partial_derivative(x(0) * x(1) + Poly(3) * x(1) * x(1), 1, 3) == x(0) + Poly(6) * x(1));
  CHECK_THROWS_AS(partial_derivative(f, 3, 3), std::out_of_range);
}

TEST_CASE("partial derivatives obey the Leibniz rule")
{
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Poly f = test::random_poly(rng, 4, 3, 4);
    const Poly g = test::random_poly(rng, 4, 3, 4);
    for (VarIndex v = 0; v < 4; ++v)
      CHECK(derivative(f * g, v) == derivative(f, v) * g + f * derivative(g, v));
  }
}

TEST_CASE("linear substitution")
{
  const Poly f = x(0) * x(0);
  CHECK(substitute_linear(f, {{0, x(1) + x(2)}}) ==
        x(1) * x(1) + Poly(2) * x(1) * x(2) + x(2) * x(2));

  std::mt19937_64 rng(5);
  const Poly g = test::random_poly(rng, 3, 4, 6);
  CHECK(substitute_linear(g, {{0, x(0)}, {1, x(1)}, {2, x(2)}}) == g);
  CHECK(substitute_linear(g, {}) == g);

  CHECK_THROWS_AS(substitute_linear(f, {{0, x(1) * x(1)}}), std::invalid_argument);
}

TEST_CASE("linear substitution inverts the Cartan change of variables")
{
  // x0, x1, x2 play x11, x22, x33; x3, x4, x5 play h1, h2, h3. Solving
  // h1 = x11 - x22, h2 = x22 - x33, h3 = x11 + x22 + x33 by hand gives:
  const GaussScalar third(1, 3);
  const std::map<VarIndex, Poly> images{
    {0, (x(5) + Poly(2) * x(3) + x(4)) * third},
    {1, (x(5) - x(3) + x(4)) * third},
    {2, (x(5) - x(3) - Poly(2) * x(4)) * third},
  };
  CHECK(substitute_linear(x(0) - x(1), images) == x(3));
  CHECK(substitute_linear(x(1) - x(2), images) == x(4));
  CHECK(substitute_linear(x(0) + x(1) + x(2), images) == x(5));
  // Unsubstituted variables pass through.
  CHECK(substitute_linear(x(6) * x(0), images) == x(6) * images.at(0));
}

TEST_CASE("characteristic polynomial on small matrices")
{
  auto one = char_poly_det({{x(0)}});
  REQUIRE(one.size() == 2);
  CHECK(one[0] == x(0));
  CHECK(one[1] == Poly(-1));

  auto zero = char_poly_det({{Poly(), Poly()}, {Poly(), Poly()}});
  REQUIRE(zero.size() == 3);
  CHECK(zero[0].is_zero());
  CHECK(zero[1].is_zero());
  CHECK(zero[2] == Poly(1));

  auto two = char_poly_det({{x(0), x(1)}, {x(2), x(3)}});
  REQUIRE(two.size() == 3);
  CHECK(two[0] == x(0) * x(3) - x(1) * x(2));
  CHECK(two[1] == -(x(0) + x(3)));
  CHECK(two[2] == Poly(1));

  CHECK_THROWS_AS(char_poly_det({{x(0), x(1)}}), std::invalid_argument);
}

TEST_CASE("characteristic polynomial agrees with cofactor expansion")
{
  std::mt19937_64 rng(17);
  SUBCASE("random rational 3x3")
  {
    for (int t = 0; t < 20; ++t) {
      PolyMatrix m(3, std::vector<Poly>(3));
      for (auto& row : m)
        for (auto& e : row)
          e = Poly(test::small_rational(rng));
      CHECK(char_poly_det(m) == cofactor_charpoly(m, 0));
    }
  }
  SUBCASE("random linear 4x4")
  {
    for (int t = 0; t < 5; ++t) {
      PolyMatrix m(4, std::vector<Poly>(4));
      for (auto& row : m)
        for (auto& e : row)
          e = test::random_homogeneous(rng, 5, 1, 2);
      // Variables 0..4 are taken; T is variable 9.
      CHECK(char_poly_det(m) == cofactor_charpoly(m, 9));
    }
  }
}

TEST_CASE("polynomial text format")
{
  const Poly f = parse_poly("x0^2 - x1");
  CHECK(f == x(0) * x(0) - x(1));
  CHECK(format_poly(f) == "x0^2 - x1");

  const Poly g = parse_poly("(1/2)*x0*x1 + i*x2");
  CHECK(g == x(0) * x(1) * GaussScalar(1, 2) + x(2) * GaussScalar::imaginary_unit());
  CHECK(parse_poly(format_poly(g)) == g);

  CHECK(parse_poly("0").is_zero());
  CHECK(format_poly(Poly()) == "0");

  const GaussScalar c = parse_scalar("(1/2+3/4*i)");
  CHECK(c.re() == mpq_class(1, 2));
  CHECK(c.im() == mpq_class(3, 4));
  CHECK(parse_scalar(format_scalar(c)) == c);
  CHECK(parse_poly(" x0 * x0 ") == parse_poly("x0^2"));
}

TEST_CASE("parse errors carry a position")
{
  try {
    parse_poly("x0 + * x1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_poly("x0 + y"), ParseError);
  CHECK_THROWS_AS(parse_poly("x3", {.nvars = 3, .names = {}}), ParseError);
  CHECK(parse_poly("H1 - x0", {.nvars = 2, .names = {"H0", "H1"}}) == x(1) - x(0));
}

TEST_CASE("serialization round trip is the identity")
{
  std::mt19937_64 rng(23);
  const GaussScalar i = GaussScalar::imaginary_unit();
  for (int t = 0; t < 100; ++t) {
    Poly f = test::random_poly(rng, 5, 4, 6);
    f += test::random_poly(rng, 5, 2, 2) * (test::small_rational(rng) * i);
    const std::string text = format_poly(f);
    CHECK(parse_poly(text) == f);
    CHECK(format_poly(parse_poly(text)) == text);
  }
}

TEST_CASE("modular images")
{
  namespace md = modular;
  const std::uint64_t i = md::reduce(GaussScalar::imaginary_unit());
  CHECK(md::mul(i, i) == md::kPrime - 1);
  CHECK(md::mul(md::reduce(GaussScalar(1, 3)), 3) == 1);
  CHECK(md::mul(md::inverse(12345), 12345) == 1);

  const std::vector<std::uint64_t> point{2, 3};
  CHECK(md::evaluate(x(0) * x(1) + Poly(1), point) == 7);

  CHECK(md::rank({{1, 2}, {2, 4}}) == 1);
  CHECK(md::rank({{1, 2}, {3, 4}}) == 2);
}

TEST_CASE("exact dense linear algebra")
{
  const ScalarMatrix m{{GaussScalar(1), GaussScalar(2)}, {GaussScalar(3), GaussScalar(4)}};
  CHECK(rank(m) == 2);
  const auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK((*inv)[0][0] == GaussScalar(-2));
  CHECK((*inv)[1][1] == GaussScalar(-1, 2));
  CHECK_FALSE(inverse({{GaussScalar(1), GaussScalar(2)}, {GaussScalar(2), GaussScalar(4)}}));

  const RowSpan span({{GaussScalar(1), GaussScalar(0), GaussScalar(1)},
                      {GaussScalar(0), GaussScalar(1), GaussScalar(1)}});
  CHECK(span.independent());
  const auto coords = span.coordinates({GaussScalar(2), GaussScalar(3), GaussScalar(5)});
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == GaussScalar(2));
  CHECK((*coords)[1] == GaussScalar(3));
  CHECK_FALSE(span.coordinates({GaussScalar(1), GaussScalar(0), GaussScalar(0)}));
}
