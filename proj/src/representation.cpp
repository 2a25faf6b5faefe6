#include "labkit/representation.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "labkit/modular.hpp"

namespace labkit {

namespace md = modular;

namespace {

ScalarMatrix product(const ScalarMatrix& a, const ScalarMatrix& b)
{
  const std::size_t n = a.size();
  ScalarMatrix c(n, ScalarVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero())
        continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero())
          c[i][j].add_product(a[i][k], b[k][j]);
    }
  return c;
}

} // namespace

ModularRepresentation::ModularRepresentation(const LieAlgebra& alg,
                                             const std::vector<ScalarMatrix>& images)
{
  if (images.size() != alg.dim())
    throw std::invalid_argument("representation needs " + std::to_string(alg.dim()) +
                                " matrices, got " + std::to_string(images.size()));
  dim_ = images.empty() ? 0 : images.front().size();
  for (const ScalarMatrix& m : images) {
    if (m.size() != dim_)
      throw std::invalid_argument("representation matrices differ in size");
    for (const ScalarVector& row : m)
      if (row.size() != dim_)
        throw std::invalid_argument("representation matrix is not square");
  }

  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j) {
      ScalarMatrix lhs = product(images[i], images[j]);
      const ScalarMatrix ji = product(images[j], images[i]);
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
          lhs[r][c] -= ji[r][c];
      for (const BracketTerm& t : alg.bracket(i, j))
        for (std::size_t r = 0; r < dim_; ++r)
          for (std::size_t c = 0; c < dim_; ++c)
            lhs[r][c].add_product(-t.c, images[t.k][r][c]);
      for (const ScalarVector& row : lhs)
        for (const GaussScalar& x : row)
          if (!x.is_zero())
            throw std::invalid_argument("matrices violate the bracket of " +
                                        alg.generator_names()[i] + " and " +
                                        alg.generator_names()[j]);
    }

  gens_.resize(images.size());
  for (std::size_t g = 0; g < images.size(); ++g)
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c)
        if (!images[g][r][c].is_zero())
          gens_[g].push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                              md::reduce(images[g][r][c])});
}

ModularRepresentation ModularRepresentation::adjoint(const LieAlgebra& alg)
{
  const std::size_t n = alg.dim();
  std::vector<ScalarMatrix> images(n, ScalarMatrix(n, ScalarVector(n)));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < n; ++j)
      for (const BracketTerm& t : alg.bracket(g, j))
        images[g][t.k][j] = t.c;
  return ModularRepresentation(alg, images);
}

ModularRepresentation ModularRepresentation::tensor(const ModularRepresentation& a,
                                                    const ModularRepresentation& b)
{
  if (a.algebra_dim() != b.algebra_dim())
    throw std::invalid_argument("tensor product of representations of different algebras");
  ModularRepresentation out;
  out.dim_ = a.dim_ * b.dim_;
  out.gens_.resize(a.gens_.size());
  const auto db = static_cast<std::uint32_t>(b.dim_);
  for (std::size_t g = 0; g < a.gens_.size(); ++g) {
    auto& dst = out.gens_[g];
    for (const Entry& e : a.gens_[g])
      for (std::uint32_t s = 0; s < db; ++s)
        dst.push_back({e.row * db + s, e.col * db + s, e.c});
    for (std::uint32_t r = 0; r < a.dim_; ++r)
      for (const Entry& e : b.gens_[g])
        dst.push_back({r * db + e.row, r * db + e.col, e.c});
  }
  return out;
}

ModularRepresentation::Vec ModularRepresentation::apply(std::size_t generator, const Vec& v) const
{
  Vec w(dim_, 0);
  for (const Entry& e : gens_.at(generator))
    w[e.row] = md::add(w[e.row], md::mul(e.c, v[e.col]));
  return w;
}

ModularRepresentation::Vec ModularRepresentation::apply(const Word& w, const Vec& v) const
{
  Vec t = v;
  for (std::size_t k = w.size(); k-- > 0;)
    t = apply(w[k], t);
  return t;
}

ModularRepresentation::Vec ModularRepresentation::apply(const NCPoly& p, const Vec& v) const
{
  Vec acc(dim_, 0);
  for (const auto& [w, c] : p.terms()) {
    const Vec t = apply(w, v);
    const std::uint64_t cc = md::reduce(c);
    for (std::size_t q = 0; q < dim_; ++q)
      acc[q] = md::add(acc[q], md::mul(cc, t[q]));
  }
  return acc;
}

ModularRepresentation::Vec ModularRepresentation::apply_symmetrized(const Poly& f,
                                                                    const Vec& v) const
{
  Vec acc(dim_, 0);
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::pair<VarIndex, std::uint32_t>> remaining(m.factors().begin(),
                                                              m.factors().end());
    std::uint32_t degree = 0;
    for (const auto& [var, e] : remaining)
      degree += e;

    // Depth-first over distinct orderings; shared suffixes are applied once.
    Vec sum(dim_, 0);
    std::uint64_t orderings = 0;
    std::function<void(const Vec&, std::uint32_t)> walk = [&](const Vec& t, std::uint32_t left) {
      if (left == 0) {
        for (std::size_t q = 0; q < dim_; ++q)
          sum[q] = md::add(sum[q], t[q]);
        ++orderings;
        return;
      }
      for (auto& [var, e] : remaining)
        if (e > 0) {
          --e;
          walk(apply(var, t), left - 1);
          ++e;
        }
    };
    walk(v, degree);
    const std::uint64_t scale = md::mul(md::reduce(c), md::inverse(orderings));
    for (std::size_t q = 0; q < dim_; ++q)
      acc[q] = md::add(acc[q], md::mul(scale, sum[q]));
  }
  return acc;
}

std::optional<RepresentationWitness> noncommutation_witness(const ModularRepresentation& rep,
                                                            const Poly& f, const Poly& g,
                                                            std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  const auto v = md::random_point(rep.dim(), rng);
  const auto fg = rep.apply_symmetrized(f, rep.apply_symmetrized(g, v));
  const auto gf = rep.apply_symmetrized(g, rep.apply_symmetrized(f, v));
  RepresentationWitness w{rep.dim(), seed, 0};
  for (std::size_t q = 0; q < fg.size(); ++q)
    if (fg[q] != gf[q])
      ++w.nonzero_components;
  if (w.nonzero_components == 0)
    return std::nullopt;
  return w;
}

} // namespace labkit
