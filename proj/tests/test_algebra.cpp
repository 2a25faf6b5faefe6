#include <doctest.h>

#include <random>
#include <stdexcept>

#include "labkit/lie_algebra.hpp"
#include "labkit/linalg.hpp"
#include "labkit/poly_io.hpp"
#include "test_support.hpp"

using namespace labkit;
using labkit::test::x;

namespace {

Poly casimir_so3() { return x(0) * x(0) + x(1) * x(1) + x(2) * x(2); }

LieAlgebra abelian(std::size_t n) { return LieAlgebra("abelian", n); }

// so(3) with [X1,X2] = b X0 instead of X0.
LieAlgebra scaled_so3(long b)
{
  LieAlgebra alg("so3_scaled", 3);
  alg.set_bracket(0, 1, {{2, GaussScalar(1)}});
  alg.set_bracket(1, 2, {{0, GaussScalar(b)}});
  alg.set_bracket(2, 0, {{1, GaussScalar(1)}});
  return alg;
}

// Exact rank of the adjoint matrix at an integer point, by Gaussian
// elimination over Q(i); independent of the prime-field path.
std::size_t exact_rank_at(const LieAlgebra& alg, const std::vector<long>& point)
{
  const std::size_t n = alg.dim();
  ScalarMatrix m(n, ScalarVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const BracketTerm& t : alg.bracket(i, j))
        m[i][j] += t.c * GaussScalar(point[t.k]);
  return rank(m);
}

ScalarMatrix random_invertible(std::mt19937_64& rng, std::size_t n)
{
  for (;;) {
    ScalarMatrix m(n, ScalarVector(n));
    for (auto& row : m)
      for (auto& e : row)
        e = test::small_rational(rng);
    if (inverse(m))
      return m;
  }
}

const std::vector<LieAlgebra>& sample_algebras()
{
  static const std::vector<LieAlgebra> algs{make_so3(), make_heisenberg(), make_su3()};
  return algs;
}

} // namespace

TEST_CASE("standard algebras satisfy Jacobi")
{
  CHECK(validate(make_so3()).ok);
  CHECK(validate(make_heisenberg()).ok);
  CHECK(validate(make_su3()).ok);
  CHECK(validate(abelian(4)).ok);
  CHECK(validate(make_so3()).triples_checked == 1);
  CHECK(validate(make_su3()).triples_checked == 56);
}

TEST_CASE("rescaled so(3) brackets still satisfy Jacobi")
{
  // Every three-dimensional bracket of the form [X0,X1]=aX2, [X1,X2]=bX0,
  // [X2,X0]=cX1 satisfies Jacobi: each cyclic term vanishes on its own.
  CHECK(validate(scaled_so3(2)).ok);
  CHECK(validate(scaled_so3(-7)).ok);
}

TEST_CASE("a bracket violating Jacobi is reported by triple")
{
  LieAlgebra alg("broken", 3);
  alg.set_bracket(0, 1, {{2, GaussScalar(1)}, {0, GaussScalar(1)}});
  alg.set_bracket(1, 2, {{0, GaussScalar(1)}});
  alg.set_bracket(2, 0, {{1, GaussScalar(1)}});
  const JacobiReport r = validate(alg);
  CHECK_FALSE(r.ok);
  REQUIRE(r.failing_triples.size() == 1);
  CHECK(r.failing_triples[0] == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("brackets are stored antisymmetrically")
{
  const LieAlgebra so3 = make_so3();
  CHECK(so3.bracket(1, 0) == BracketExpansion{{2, GaussScalar(-1)}});
  CHECK(so3.bracket(0, 0).empty());
  LieAlgebra alg("t", 2);
  CHECK_THROWS_AS(alg.set_bracket(0, 2, {}), std::out_of_range);
  CHECK_THROWS_AS(alg.set_bracket(1, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(alg.set_bracket(0, 1, {{5, GaussScalar(1)}}), std::out_of_range);
}

TEST_CASE("adjoint matrices")
{
  const PolyMatrix heis = adjoint_matrix(make_heisenberg());
  const PolyMatrix heis_expected{{Poly(), x(2), Poly()}, {-x(2), Poly(), Poly()},
                                 {Poly(), Poly(), Poly()}};
  CHECK(heis == heis_expected);

  for (const auto& row : adjoint_matrix(abelian(3)))
    for (const Poly& e : row)
      CHECK(e.is_zero());

  const PolyMatrix so3 = adjoint_matrix(make_so3());
  const PolyMatrix so3_expected{{Poly(), x(2), -x(1)}, {-x(2), Poly(), x(0)},
                                {x(1), -x(0), Poly()}};
  CHECK(so3 == so3_expected);

  for (const LieAlgebra& alg : sample_algebras()) {
    const PolyMatrix m = adjoint_matrix(alg);
    for (std::size_t i = 0; i < alg.dim(); ++i)
      for (std::size_t j = 0; j < alg.dim(); ++j)
        CHECK(m[i][j] == -m[j][i]);
  }
}

TEST_CASE("invariant counts")
{
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CHECK(invariant_count(make_heisenberg(), {.seed = seed}) == 1);
    CHECK(invariant_count(make_so3(), {.seed = seed}) == 1);
    CHECK(invariant_count(make_su3(), {.seed = seed}) == 2);
  }
  // Independent oracle: exact rank at an integer point with the central
  // coordinate nonzero is 2 for both three-dimensional algebras.
  CHECK(exact_rank_at(make_heisenberg(), {4, -1, 3}) == 2);
  CHECK(exact_rank_at(make_so3(), {4, -1, 3}) == 2);
  CHECK(exact_rank_at(make_su3(), {1, 2, 3, 4, 5, 6, 7, -8}) == 6);

  CHECK(invariant_count(abelian(1)) == 1);
  CHECK(invariant_count(abelian(5)) == 5);
  CHECK(invariant_count(abelian(0)) == 0);
}

TEST_CASE("invariant count is unchanged by a change of basis")
{
  std::mt19937_64 rng(29);
  for (const LieAlgebra& alg : sample_algebras())
    for (int t = 0; t < 3; ++t) {
      const LieAlgebra moved = change_basis(alg, random_invertible(rng, alg.dim()));
      CHECK(validate(moved).ok);
      CHECK(invariant_count(moved) == invariant_count(alg));
    }
}

TEST_CASE("differential operators")
{
  const LieAlgebra so3 = make_so3();
  CHECK(diffop_apply(so3, 0, casimir_so3()).is_zero());
  // Xhat_0 = C_0j^k x_k d/dx_j = x2 d/dx1 - x1 d/dx2.
  CHECK(diffop_apply(so3, 0, x(1)) == x(2));
  for (std::size_t g = 0; g < 3; ++g)
    CHECK(diffop_apply(so3, g, Poly(5)).is_zero());

  const ScalarVector combo{GaussScalar(1), GaussScalar(2), GaussScalar(0)};
  CHECK(diffop_apply(so3, combo, x(0) * x(1)) ==
        diffop_apply(so3, 0, x(0) * x(1)) + Poly(2) * diffop_apply(so3, 1, x(0) * x(1)));
  CHECK_THROWS_AS(diffop_apply(so3, ScalarVector{GaussScalar(1)}, x(0)), std::invalid_argument);
}

TEST_CASE("invariance")
{
  CHECK(is_invariant(make_so3(), casimir_so3()));
  CHECK(is_invariant(make_heisenberg(), x(2)));
  CHECK_FALSE(is_invariant(make_so3(), x(0)));
  CHECK(diffop_apply(make_so3(), 1, x(0)) == -x(2));
  CHECK(first_non_annihilating(make_so3(), x(0)) == std::optional<std::size_t>(1));
}

TEST_CASE("Berezin bracket examples")
{
  const LieAlgebra so3 = make_so3();
  CHECK(berezin_bracket(so3, x(0), x(1)) == x(2));
  CHECK(berezin_bracket(so3, x(0) * x(0), x(1) * x(1)) == Poly(4) * x(0) * x(1) * x(2));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Poly g = test::random_poly(rng, 3, 3, 5);
    CHECK(berezin_bracket(so3, casimir_so3(), g).is_zero());
  }
}

TEST_CASE("Berezin bracket is a Poisson bracket")
{
  std::mt19937_64 rng(37);
  for (const LieAlgebra& alg : sample_algebras()) {
    const std::size_t n = alg.dim();
    for (int t = 0; t < 8; ++t) {
      const Poly f = test::random_poly(rng, n, 3, 3);
      const Poly g = test::random_poly(rng, n, 3, 3);
      const Poly h = test::random_poly(rng, n, 3, 3);
      CHECK(berezin_bracket(alg, f, g) == -berezin_bracket(alg, g, f));
      CHECK(berezin_bracket(alg, f * g, h) ==
            f * berezin_bracket(alg, g, h) + berezin_bracket(alg, f, h) * g);
      const Poly jac = berezin_bracket(alg, f, berezin_bracket(alg, g, h)) +
                       berezin_bracket(alg, g, berezin_bracket(alg, h, f)) +
                       berezin_bracket(alg, h, berezin_bracket(alg, f, g));
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("bracket with a linear symbol is the differential operator")
{
  std::mt19937_64 rng(41);
  for (const LieAlgebra& alg : sample_algebras())
    for (int t = 0; t < 5; ++t) {
      const Poly h = test::random_poly(rng, alg.dim(), 3, 5);
      for (std::size_t l = 0; l < alg.dim(); ++l)
        CHECK(berezin_bracket(alg, x(static_cast<VarIndex>(l)), h) == diffop_apply(alg, l, h));
    }
}

TEST_CASE("invariants are central for the bracket")
{
  std::mt19937_64 rng(43);
  const std::vector<std::pair<LieAlgebra, Poly>> cases{
    {make_so3(), casimir_so3()}, {make_heisenberg(), x(2) * x(2) - x(2)}};
  for (const auto& [alg, f] : cases) {
    REQUIRE(is_invariant(alg, f));
    for (int t = 0; t < 10; ++t)
      CHECK(berezin_bracket(alg, f, test::random_poly(rng, alg.dim(), 3, 4)).is_zero());
  }
}

TEST_CASE("structure constants of a matrix algebra")
{
  // so(3) as antisymmetric 3x3 matrices: L0 = E21 - E12 etc.
  auto e = [](std::size_t r, std::size_t c) {
    ScalarMatrix m(3, ScalarVector(3));
    m[r][c] = GaussScalar(1);
    return m;
  };
  auto diff = [](ScalarMatrix a, const ScalarMatrix& b) {
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        a[r][c] -= b[r][c];
    return a;
  };
  const std::vector<ScalarMatrix> basis{diff(e(2, 1), e(1, 2)), diff(e(0, 2), e(2, 0)),
                                        diff(e(1, 0), e(0, 1))};
  const LieAlgebra alg = lie_algebra_from_matrices("so3m", {"L0", "L1", "L2"}, basis);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(alg.bracket(i, j) == make_so3().bracket(i, j));

  CHECK_THROWS_AS(lie_algebra_from_matrices("open", {"A", "B"}, {e(0, 1), e(1, 0)}),
                  std::invalid_argument);
}

TEST_CASE("algebra JSON round trip and errors")
{
  for (const LieAlgebra& alg : sample_algebras()) {
    const nlohmann::json j = algebra_to_json(alg);
    const LieAlgebra back = algebra_from_json(j);
    CHECK(back.generator_names() == alg.generator_names());
    CHECK(back.brackets() == alg.brackets());
    CHECK(algebra_to_json(back) == j);
  }

  nlohmann::json bad = algebra_to_json(make_so3());
  bad["brackets"][0]["i"] = 2;
  bad["brackets"][0]["j"] = 1;
  CHECK_THROWS_AS(algebra_from_json(bad), std::invalid_argument);

  nlohmann::json out_of_range = algebra_to_json(make_so3());
  out_of_range["brackets"][0]["terms"][0]["k"] = 9;
  CHECK_THROWS(algebra_from_json(out_of_range));

  nlohmann::json bad_scalar = algebra_to_json(make_so3());
  bad_scalar["brackets"][0]["terms"][0]["c"] = "1/";
  CHECK_THROWS_AS(algebra_from_json(bad_scalar), ParseError);
}

TEST_CASE("central extension")
{
  const LieAlgebra ext = with_central_extension(make_so3(), 1);
  CHECK(ext.dim() == 4);
  CHECK(validate(ext).ok);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(ext.commutes(i, 3));
  CHECK(invariant_count(ext) == 2);
}
