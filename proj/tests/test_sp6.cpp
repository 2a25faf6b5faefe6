#include <doctest.h>

#include <future>
#include <set>

#include "labkit/charpoly.hpp"
#include "labkit/enveloping.hpp"
#include "labkit/labeling.hpp"
#include "labkit/modular.hpp"
#include "labkit/representation.hpp"
#include "labkit/sp6.hpp"
#include "test_support.hpp"

using namespace labkit;
using namespace labkit::sp6;
using labkit::test::x;

namespace {

const ChainArtifacts& artifacts()
{
  static const ChainArtifacts a = build_artifacts();
  return a;
}

int sgn(int i) { return i > 0 ? 1 : -1; }

// Canonical generators in index order, written out by hand.
const std::vector<std::pair<int, int>>& expected_generators()
{
  static const std::vector<std::pair<int, int>> gens = [] {
    std::vector<std::pair<int, int>> g;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        g.emplace_back(i, j);
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j)
        g.emplace_back(i, -j);
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j)
        g.emplace_back(-i, j);
    return g;
  }();
  return gens;
}

// X(a, b) = s * X(canonical); from X(a,b) = -e_a e_b X(-b,-a).
std::pair<std::size_t, int> canonical(int a, int b)
{
  int s = 1;
  if (a > 0 && b < 0 && a > -b) {
    s = -sgn(a) * sgn(b);
    std::tie(a, b) = std::pair(-b, -a);
  } else if (a < 0 && b > 0 && -a > b) {
    s = -sgn(a) * sgn(b);
    std::tie(a, b) = std::pair(-b, -a);
  } else if (a < 0 && b < 0) {
    s = -sgn(a) * sgn(b);
    std::tie(a, b) = std::pair(-b, -a);
  }
  const auto& gens = expected_generators();
  const auto it = std::find(gens.begin(), gens.end(), std::pair(a, b));
  return {static_cast<std::size_t>(it - gens.begin()), s};
}

// Racah bracket evaluated straight from its four delta terms.
ScalarVector racah(int i, int j, int k, int l)
{
  ScalarVector out(Sp6Basis::kDim);
  auto add = [&](bool delta, long c, int a, int b) {
    if (!delta)
      return;
    const auto [idx, s] = canonical(a, b);
    out[idx] += GaussScalar(c * s);
  };
  const long eij = sgn(i) * sgn(j);
  add(j == k, 1, i, l);
  add(i == l, -1, k, j);
  add(j == -l, eij, k, -i);
  add(i == -k, -eij, -j, l);
  return out;
}

ScalarVector as_vector(const BracketExpansion& e)
{
  ScalarVector v(Sp6Basis::kDim);
  for (const BracketTerm& t : e)
    v[t.k] = t.c;
  return v;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b)
{
  const std::size_t n = a.size();
  PolyMatrix c(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyAccumulator acc;
      for (std::size_t k = 0; k < n; ++k)
        acc.add_product(a[i][k], b[k][j]);
      c[i][j] = acc.take();
    }
  return c;
}

Poly trace_of_product(const PolyMatrix& a, const PolyMatrix& b)
{
  PolyAccumulator acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k)
      acc.add_product(a[i][k], b[k][i]);
  return acc.take();
}

std::vector<Poly> unitary_rows_ops(const LieAlgebra& alg, const Poly& f)
{
  std::vector<Poly> out;
  for (std::size_t u : artifacts().basis.unitary_block())
    out.push_back(diffop_apply(alg, u, f));
  return out;
}

} // namespace

TEST_CASE("index scheme")
{
  const Sp6Basis basis;
  CHECK(basis.generators() == expected_generators());
  CHECK(basis.unitary_block().size() == 9);
  CHECK(basis.complement_block().size() == 12);
  std::set<std::size_t> all(basis.unitary_block().begin(), basis.unitary_block().end());
  all.insert(basis.complement_block().begin(), basis.complement_block().end());
  CHECK(all.size() == 21);
  CHECK(basis.diagonal() == std::array<std::size_t, 3>{0, 4, 8});
  CHECK(basis.names()[basis.index(1, -2)] == "X_1_m2");
}

TEST_CASE("every raw pair resolves through the constraint")
{
  const Sp6Basis basis;
  std::set<std::size_t> hit;
  int raw = 0;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      if (i == 0 || j == 0)
        continue;
      ++raw;
      const auto [idx, s] = basis.resolve(i, j);
      CHECK(std::pair(idx, s) == canonical(i, j));
      hit.insert(idx);
      // X(i,j) + e_i e_j X(-j,-i) = 0.
      const auto [idx2, s2] = basis.resolve(-j, -i);
      CHECK(idx2 == idx);
      if (i != -j)
        CHECK(s == -sgn(i) * sgn(j) * s2);
    }
  CHECK(raw == 36);
  CHECK(hit.size() == 21);
  CHECK_THROWS_AS(basis.resolve(0, 1), std::out_of_range);
  CHECK_THROWS_AS(basis.resolve(4, 1), std::out_of_range);
}

TEST_CASE("brackets match the Racah formula")
{
  const LieAlgebra& alg = artifacts().algebra;
  const auto& gens = expected_generators();
  for (std::size_t a = 0; a < 21; ++a)
    for (std::size_t b = 0; b < 21; ++b) {
      const auto [i, j] = gens[a];
      const auto [k, l] = gens[b];
      CHECK(as_vector(alg.bracket(a, b)) == racah(i, j, k, l));
    }
  // [X(1,1), X(1,2)] = X(1,2) by the first delta term alone.
  CHECK(alg.bracket(0, 1) == BracketExpansion{{1, GaussScalar(1)}});
}

TEST_CASE("brackets match the 6 x 6 matrix realization")
{
  const Sp6Basis basis;
  // X(i,j) -> E(i,j) - e_i e_j E(-j,-i), positions 1, 2, 3, -1, -2, -3.
  auto pos = [](int i) { return static_cast<std::size_t>(i > 0 ? i - 1 : 2 - i); };
  std::vector<ScalarMatrix> mats;
  for (const auto& [i, j] : expected_generators()) {
    ScalarMatrix m(6, ScalarVector(6));
    m[pos(i)][pos(j)] += GaussScalar(1);
    m[pos(-j)][pos(-i)] -= GaussScalar(sgn(i) * sgn(j));
    mats.push_back(m);
  }
  CHECK(defining_matrices(basis) == mats);
  const LieAlgebra from_matrices = lie_algebra_from_matrices("sp6m", basis.names(), mats);
  CHECK(from_matrices.brackets() == artifacts().algebra.brackets());
  CHECK_NOTHROW(ModularRepresentation(artifacts().algebra, mats));
}

TEST_CASE("Jacobi holds on all triples")
{
  const JacobiReport r = validate(artifacts().algebra);
  CHECK(r.ok);
  CHECK(r.triples_checked == 1330);
  for (std::size_t a = 0; a < 21; ++a)
    for (std::size_t b = 0; b < 21; ++b) {
      ScalarVector ab = as_vector(artifacts().algebra.bracket(a, b));
      for (GaussScalar& c : ab)
        c = -c;
      CHECK(ab == as_vector(artifacts().algebra.bracket(b, a)));
    }
}

TEST_CASE("three invariants")
{
  for (std::uint64_t seed : {1u, 2u, 3u})
    CHECK(invariant_count(artifacts().algebra, {.seed = seed}) == 3);
}

TEST_CASE("matrix convention gate")
{
  const CasimirResult& c = artifacts().casimirs;
  CHECK(c.convention ==
        MatrixConvention{.transpose_unitary_block = true, .conjugate_lower_phase = true});
  REQUIRE(!c.rejected.empty());
  CHECK(c.rejected.front().first == candidate_conventions().front());
  CHECK(candidate_conventions().front() == MatrixConvention{});
}

TEST_CASE("accepted matrix lies in sp(6)")
{
  // [[A, B], [C, -A^T]] with B and C symmetric.
  const PolyMatrix m = build_m_matrix(artifacts().basis, artifacts().casimirs.convention);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(m[r + 3][c + 3] == -m[c][r]);
      CHECK(m[r][c + 3] == m[c][r + 3]);
      CHECK(m[r + 3][c] == m[c + 3][r]);
    }
}

TEST_CASE("Casimir coefficients")
{
  const CasimirResult& c = artifacts().casimirs;
  REQUIRE(c.coefficients.size() == 7);
  CHECK(c.coefficients[6] == Poly(1));
  for (std::size_t k : {1u, 3u, 5u})
    CHECK(c.coefficients[k].is_zero());
  CHECK(c.coefficients[4] == c.C2);
  CHECK(c.coefficients[2] == c.C4);
  CHECK(c.coefficients[0] == c.C6);
  for (const Poly* p : {&c.C2, &c.C4, &c.C6}) {
    CHECK(p->is_homogeneous());
    CHECK(p->is_real());
  }
  CHECK(c.C2.degree() == 2u);
  CHECK(c.C4.degree() == 4u);
  CHECK(c.C6.degree() == 6u);
  CHECK(c.C2.size() == 12);
  CHECK(c.C4.size() == 123);
  CHECK(c.C6.size() == 388);
}

TEST_CASE("Casimirs agree with power sums of the matrix")
{
  // Newton's identities with vanishing odd power sums:
  // e2 = -p2/2, e4 = (p2^2/2 - p4)/4, e6 = -(e4 p2 + e2 p4 + p6)/6.
  const PolyMatrix m = build_m_matrix(artifacts().basis, artifacts().casimirs.convention);
  const PolyMatrix m2 = mat_mul(m, m);
  const PolyMatrix m3 = mat_mul(m2, m);
  const Poly p2 = trace_of_product(m, m);
  const Poly p4 = trace_of_product(m2, m2);
  const Poly p6 = trace_of_product(m3, m3);
  CHECK(trace_of_product(m, m2).is_zero());
  const Poly e2 = p2 * GaussScalar(-1, 2);
  const Poly e4 = (p2 * p2 * GaussScalar(1, 2) - p4) * GaussScalar(1, 4);
  const Poly e6 = -(e4 * p2 + e2 * p4 + p6) * GaussScalar(1, 6);
  CHECK(artifacts().casimirs.C2 == e2);
  CHECK(artifacts().casimirs.C4 == e4);
  CHECK(artifacts().casimirs.C6 == e6);
}

TEST_CASE("Casimirs are annihilated by every generator")
{
  const CasimirResult& c = artifacts().casimirs;
  for (const Poly* p : {&c.C2, &c.C4, &c.C6})
    for (std::size_t g = 0; g < 21; ++g)
      CHECK(diffop_apply(artifacts().algebra, g, *p).is_zero());
  for (const Poly* p : {&artifacts().hC2, &artifacts().hC4, &artifacts().hC6})
    CHECK(is_invariant(artifacts().adapted, *p));
}

TEST_CASE("the su(3) x u(1) chain")
{
  const ReductionChain& chain = artifacts().chain;
  const ChainValidation v = validate_chain(chain);
  REQUIRE(v.ok);
  CHECK(v.subalgebra->dim() == 9);
  CHECK(invariant_count(*v.subalgebra) == 3);
  CHECK(chain.l_prime == 0);
  CHECK(chain.complement_vars->size() == 12);

  const MlpReport r = mlp_count(chain);
  CHECK(r.n_missing == 3);
  CHECK(r.m_available == 6);
  CHECK(r.n_subgroup_scalars == 12);
  CHECK(r.n_subgroup_scalars_from_labels == 12);

  // H3 commutes with every unitary generator.
  const ScalarVector& h3 = chain.sub_rows.back();
  for (std::size_t u : artifacts().basis.unitary_block()) {
    ScalarVector e(21);
    e[u] = GaussScalar(1);
    for (const GaussScalar& c : artifacts().algebra.bracket(h3, e))
      CHECK(c.is_zero());
  }

  ReductionChain u3{artifacts().algebra, {}, 0, std::nullopt};
  for (std::size_t u : artifacts().basis.unitary_block()) {
    ScalarVector e(21);
    e[u] = GaussScalar(1);
    u3.sub_rows.push_back(e);
  }
  CHECK(validate_chain(u3).ok);
}

TEST_CASE("the Cartan substitution")
{
  // x11 -> (h3 + 2h1 + h2)/3, x22 -> (h3 - h1 + h2)/3, x33 -> (h3 - h1 - 2h2)/3.
  const auto images = dual_substitution(h_basis_rows(artifacts().basis));
  const Poly h1 = x(0), h2 = x(4), h3 = x(8);
  const GaussScalar third(1, 3);
  CHECK(images.at(0) == (h3 + Poly(2) * h1 + h2) * third);
  CHECK(images.at(4) == (h3 - h1 + h2) * third);
  CHECK(images.at(8) == (h3 - h1 - Poly(2) * h2) * third);
  CHECK(images.size() == 3);
}

TEST_CASE("grading components reassemble the Casimirs")
{
  const ChainArtifacts& a = artifacts();
  std::set<std::size_t> d4, d6;
  Poly s4, s6;
  for (const auto& [k, c] : a.C4_split) {
    d4.insert(k);
    s4 += c.poly;
    CHECK(c.remaining_degree == 4 - k);
  }
  for (const auto& [k, c] : a.C6_split) {
    d6.insert(k);
    s6 += c.poly;
  }
  CHECK(d4 == std::set<std::size_t>{0, 2, 4});
  CHECK(d6 == std::set<std::size_t>{0, 2, 4, 6});
  CHECK(s4 == a.hC4);
  CHECK(s6 == a.hC6);
  CHECK(a.C22 == a.C4_split.at(2).poly);
  CHECK(a.C42 == a.C6_split.at(4).poly);
  CHECK(a.C24 == a.C6_split.at(2).poly);
}

TEST_CASE("labelling operators are subgroup scalars but not invariants")
{
  const ChainArtifacts& a = artifacts();
  const auto& comp = *a.adapted_chain.complement_vars;
  const std::set<std::size_t> comp_set(comp.begin(), comp.end());
  const std::vector<std::tuple<const Poly*, std::size_t, std::size_t>> labels{
    {&a.C22, 2, 2}, {&a.C42, 4, 2}, {&a.C24, 2, 4}};
  for (const auto& [p, k, l] : labels) {
    CHECK(is_subgroup_scalar(a.adapted_chain, *p));
    for (const Poly& image : unitary_rows_ops(a.adapted, *p))
      CHECK(image.is_zero());
    const auto witness = first_non_annihilating(a.adapted, *p);
    REQUIRE(witness.has_value());
    CHECK(comp_set.count(*witness) == 1);
    CHECK(p->is_homogeneous());
    CHECK(*p->degree() == k + l);
    const auto split = grading_split(*p, comp);
    REQUIRE(split.size() == 1);
    CHECK(split.begin()->first == k);
  }
}

TEST_CASE("labelling operators are in involution")
{
  const ChainArtifacts& a = artifacts();
  auto bracket = [&a](const Poly* f, const Poly* g) {
    return std::async(std::launch::async, [&a, f, g] { return berezin_bracket(a.adapted, *f, *g); });
  };
  auto b1 = bracket(&a.C22, &a.C42);
  auto b2 = bracket(&a.C22, &a.C24);
  auto b3 = bracket(&a.C24, &a.C42);
  CHECK(b1.get().is_zero());
  CHECK(b2.get().is_zero());
  CHECK(b3.get().is_zero());
}

TEST_CASE("subalgebra Casimirs")
{
  const ChainArtifacts& a = artifacts();
  CHECK(a.c2.degree() == 2u);
  CHECK(a.c3.degree() == 3u);
  CHECK(a.h3 == x(8));
  for (const Poly* p : {&a.c2, &a.c3, &a.h3}) {
    CHECK(p->is_homogeneous());
    CHECK(is_subgroup_scalar(a.adapted_chain, *p));
    CHECK(depends_only_on_subalgebra(a.adapted_chain, *p));
  }
  CHECK(functional_independence({a.c2, a.c3, a.h3}, 21) == 3);
}

TEST_CASE("nine operators are functionally independent")
{
  const ChainArtifacts& a = artifacts();
  const std::vector<Poly> nine{a.hC2, a.hC4, a.hC6, a.c2, a.c3, a.h3, a.C22, a.C42, a.C24};
  for (std::uint64_t seed : {1u, 2u, 3u})
    CHECK(functional_independence(nine, 21, {.seed = seed}) == 9);
}

TEST_CASE("term counts of the labelling operators")
{
  const ChainArtifacts& a = artifacts();
  CHECK(a.C22.size() == kReferenceTermCounts[0]);
  CHECK(a.C24.size() == kReferenceTermCounts[1]);
  CHECK(a.C42.size() == kReferenceTermCounts[2]);
}

TEST_CASE("representations")
{
  const ChainArtifacts& a = artifacts();
  std::vector<ScalarMatrix> mats = defining_matrices(a.basis);
  std::swap(mats[1], mats[2]);
  CHECK_THROWS_AS(ModularRepresentation(a.algebra, mats), std::invalid_argument);
  mats.pop_back();
  CHECK_THROWS_AS(ModularRepresentation(a.algebra, mats), std::invalid_argument);

  const ModularRepresentation ad = ModularRepresentation::adjoint(a.algebra);
  CHECK(ad.dim() == 21);
  CHECK(ad.algebra_dim() == 21);

  // Symmetrized action without normal ordering equals the action of the
  // normal-ordered symmetrization.
  const LieAlgebra so3 = make_so3();
  const ModularRepresentation so3_ad = ModularRepresentation::adjoint(so3);
  const ModularRepresentation rep = ModularRepresentation::tensor(so3_ad, so3_ad);
  CHECK(rep.dim() == 9);
  std::mt19937_64 rng(97);
  for (int t = 0; t < 10; ++t) {
    const Poly f = test::random_homogeneous(rng, 3, 3, 3);
    const auto v = modular::random_point(rep.dim(), rng);
    CHECK(rep.apply_symmetrized(f, v) == rep.apply(symmetrize(so3, f), v));
  }

  // Commuting and non-commuting pairs in so(3).
  const Poly cas = x(0) * x(0) + x(1) * x(1) + x(2) * x(2);
  CHECK_FALSE(noncommutation_witness(rep, cas, x(0) * x(1), 5).has_value());
  const auto w = noncommutation_witness(rep, x(0), x(1), 5);
  REQUIRE(w.has_value());
  CHECK(w->rep_dim == 9);
  CHECK(w->nonzero_components > 0);
}
