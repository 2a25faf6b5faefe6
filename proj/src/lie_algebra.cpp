#include "labkit/lie_algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "labkit/modular.hpp"
#include "labkit/poly_io.hpp"

namespace labkit {

namespace {

BracketExpansion canonical(BracketExpansion terms)
{
  std::map<std::size_t, GaussScalar> merged;
  for (auto& t : terms)
    merged[t.k] += t.c;
  BracketExpansion out;
  for (auto& [k, c] : merged)
    if (!c.is_zero())
      out.push_back({k, c});
  return out;
}

BracketExpansion negated(BracketExpansion terms)
{
  for (auto& t : terms)
    t.c = -t.c;
  return terms;
}

Poly linear_form(const BracketExpansion& terms)
{
  Poly p;
  for (const auto& t : terms)
    p.add_term(Monomial::variable(static_cast<VarIndex>(t.k)), t.c);
  return p;
}

} // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> generator_names)
  : name_(std::move(name)), names_(std::move(generator_names))
{
}

LieAlgebra::LieAlgebra(std::string name, std::size_t dim) : name_(std::move(name))
{
  for (std::size_t i = 0; i < dim; ++i)
    names_.push_back("X" + std::to_string(i));
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, BracketExpansion terms)
{
  if (i >= dim() || j >= dim())
    throw std::out_of_range("set_bracket: generator index out of range");
  if (i == j)
    throw std::invalid_argument("set_bracket: diagonal brackets are zero by definition");
  for (const auto& t : terms)
    if (t.k >= dim())
      throw std::out_of_range("set_bracket: structure constant index " + std::to_string(t.k) +
                              " out of range");
  if (i > j) {
    std::swap(i, j);
    terms = negated(std::move(terms));
  }
  terms = canonical(std::move(terms));
  if (terms.empty())
    brackets_.erase({i, j});
  else
    brackets_[{i, j}] = std::move(terms);
}

BracketExpansion LieAlgebra::bracket(std::size_t i, std::size_t j) const
{
  if (i == j)
    return {};
  bool flip = i > j;
  auto it = brackets_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == brackets_.end())
    return {};
  return flip ? negated(it->second) : it->second;
}

bool LieAlgebra::commutes(std::size_t i, std::size_t j) const
{
  if (i == j)
    return true;
  return !brackets_.count(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
}

ScalarVector LieAlgebra::bracket(const ScalarVector& u, const ScalarVector& v) const
{
  ScalarVector out(dim());
  for (const auto& [key, terms] : brackets_) {
    auto [i, j] = key;
    // u_i v_j [X_i,X_j] + u_j v_i [X_j,X_i]
    GaussScalar w = u[i] * v[j] - u[j] * v[i];
    if (w.is_zero())
      continue;
    for (const auto& t : terms)
      out[t.k].add_product(w, t.c);
  }
  return out;
}

JacobiReport validate(const LieAlgebra& alg)
{
  JacobiReport report;
  const std::size_t n = alg.dim();
  auto unit = [n](std::size_t i) {
    ScalarVector e(n);
    e[i] = GaussScalar(1);
    return e;
  };
  std::vector<ScalarVector> basis;
  for (std::size_t i = 0; i < n; ++i)
    basis.push_back(unit(i));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++report.triples_checked;
        ScalarVector s = alg.bracket(basis[i], alg.bracket(basis[j], basis[k]));
        ScalarVector t = alg.bracket(basis[j], alg.bracket(basis[k], basis[i]));
        ScalarVector u = alg.bracket(basis[k], alg.bracket(basis[i], basis[j]));
        for (std::size_t m = 0; m < n; ++m) {
          if (!(s[m] + t[m] + u[m]).is_zero()) {
            report.ok = false;
            report.failing_triples.push_back({i, j, k});
            break;
          }
        }
      }
  return report;
}

PolyMatrix adjoint_matrix(const LieAlgebra& alg)
{
  const std::size_t n = alg.dim();
  PolyMatrix m(n, std::vector<Poly>(n));
  for (const auto& [key, terms] : alg.brackets()) {
    Poly l = linear_form(terms);
    m[key.first][key.second] = l;
    m[key.second][key.first] = -l;
  }
  return m;
}

std::size_t generic_adjoint_rank(const LieAlgebra& alg, const RankOptions& options)
{
  const std::size_t n = alg.dim();
  if (n == 0)
    return 0;
  std::mt19937_64 rng(options.seed);
  std::size_t best = 0;
  for (std::size_t s = 0; s < std::max<std::size_t>(options.samples, 1); ++s) {
    auto pt = modular::random_point(n, rng);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& [key, terms] : alg.brackets()) {
      std::uint64_t val = 0;
      for (const auto& t : terms)
        val = modular::add(val, modular::mul(modular::reduce(t.c), pt[t.k]));
      m[key.first][key.second] = val;
      m[key.second][key.first] = modular::sub(0, val);
    }
    best = std::max(best, modular::rank(std::move(m)));
  }
  if (options.exact_cross_check) {
    std::uniform_int_distribution<long> dist(-50, 50);
    ScalarVector pt(n);
    for (auto& x : pt)
      x = GaussScalar(dist(rng));
    ScalarMatrix m(n, ScalarVector(n));
    for (const auto& [key, terms] : alg.brackets()) {
      GaussScalar val;
      for (const auto& t : terms)
        val.add_product(t.c, pt[t.k]);
      m[key.first][key.second] = val;
      m[key.second][key.first] = -val;
    }
    best = std::max(best, rank(std::move(m)));
  }
  return best;
}

std::size_t invariant_count(const LieAlgebra& alg, const RankOptions& options)
{
  return alg.dim() - generic_adjoint_rank(alg, options);
}

Poly diffop_apply(const LieAlgebra& alg, const ScalarVector& coeffs, const Poly& f)
{
  if (coeffs.size() != alg.dim())
    throw std::invalid_argument("diffop_apply: expected " + std::to_string(alg.dim()) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  std::map<std::size_t, Poly> derivs;
  auto d = [&](std::size_t v) -> const Poly& {
    auto it = derivs.find(v);
    if (it == derivs.end())
      it = derivs.emplace(v, derivative(f, static_cast<VarIndex>(v))).first;
    return it->second;
  };
  PolyAccumulator acc;
  for (const auto& [key, terms] : alg.brackets()) {
    auto [i, j] = key;
    if (coeffs[i].is_zero() && coeffs[j].is_zero())
      continue;
    Poly l = linear_form(terms);
    // a_i C_ij x d_j f + a_j C_ji x d_i f
    if (!coeffs[i].is_zero())
      acc.add_product(l, d(j), coeffs[i]);
    if (!coeffs[j].is_zero())
      acc.add_product(l, d(i), -coeffs[j]);
  }
  return acc.take();
}

Poly diffop_apply(const LieAlgebra& alg, std::size_t generator, const Poly& f)
{
  if (generator >= alg.dim())
    throw std::out_of_range("diffop_apply: generator index out of range");
  ScalarVector e(alg.dim());
  e[generator] = GaussScalar(1);
  return diffop_apply(alg, e, f);
}

std::optional<std::size_t> first_non_annihilating(const LieAlgebra& alg, const Poly& f)
{
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!diffop_apply(alg, i, f).is_zero())
      return i;
  return std::nullopt;
}

bool is_invariant(const LieAlgebra& alg, const Poly& f)
{
  return !first_non_annihilating(alg, f).has_value();
}

Poly berezin_bracket(const LieAlgebra& alg, const Poly& f, const Poly& g)
{
  if (f.is_constant() || g.is_constant())
    return Poly();
  // pb(f, g) = sum_i (d_i f) G_i with G_i = sum_j (C_ij^k x_k) d_j g
  std::map<std::size_t, Poly> dg;
  auto d = [&](std::size_t v) -> const Poly& {
    auto it = dg.find(v);
    if (it == dg.end())
      it = dg.emplace(v, derivative(g, static_cast<VarIndex>(v))).first;
    return it->second;
  };
  std::map<std::size_t, Poly> df;
  for (VarIndex v : f.support())
    df.emplace(v, derivative(f, v));

  std::map<std::size_t, PolyAccumulator> partial;
  for (const auto& [key, terms] : alg.brackets()) {
    auto [i, j] = key;
    bool use_i = df.count(i) > 0, use_j = df.count(j) > 0;
    if (!use_i && !use_j)
      continue;
    Poly l = linear_form(terms);
    if (use_i && !d(j).is_zero())
      partial[i].add_product(l, d(j));
    if (use_j && !d(i).is_zero())
      partial[j].add_product(l, d(i), GaussScalar(-1));
  }
  PolyAccumulator acc;
  for (auto& [i, a] : partial)
    acc.add_product(df.at(i), a.take());
  return acc.take();
}

LieAlgebra change_basis(const LieAlgebra& alg, const ScalarMatrix& rows,
                        std::vector<std::string> new_names)
{
  const std::size_t n = alg.dim();
  if (rows.size() != n)
    throw std::invalid_argument("change_basis: expected a square matrix of size dim");
  auto inv = inverse(rows);
  if (!inv)
    throw std::invalid_argument("change_basis: rows are not invertible");
  if (new_names.empty())
    new_names = alg.generator_names();
  LieAlgebra out(alg.name(), std::move(new_names));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      ScalarVector v = alg.bracket(rows[a], rows[b]);
      BracketExpansion terms;
      for (std::size_t e = 0; e < n; ++e) {
        GaussScalar w;
        for (std::size_t c = 0; c < n; ++c)
          if (!v[c].is_zero())
            w.add_product(v[c], (*inv)[c][e]);
        if (!w.is_zero())
          terms.push_back({e, w});
      }
      if (!terms.empty())
        out.set_bracket(a, b, std::move(terms));
    }
  return out;
}

std::map<VarIndex, Poly> dual_substitution(const ScalarMatrix& rows)
{
  auto inv = inverse(rows);
  if (!inv)
    throw std::invalid_argument("dual_substitution: rows are not invertible");
  const std::size_t n = rows.size();
  std::map<VarIndex, Poly> images;
  for (std::size_t b = 0; b < n; ++b) {
    Poly img;
    for (std::size_t a = 0; a < n; ++a)
      img.add_term(Monomial::variable(static_cast<VarIndex>(a)), (*inv)[b][a]);
    if (!(img == Poly::variable(static_cast<VarIndex>(b))))
      images.emplace(static_cast<VarIndex>(b), std::move(img));
  }
  return images;
}

LieAlgebra lie_algebra_from_matrices(std::string name, std::vector<std::string> names,
                                     const std::vector<ScalarMatrix>& basis)
{
  auto flatten = [](const ScalarMatrix& m) {
    ScalarVector v;
    for (const auto& row : m)
      v.insert(v.end(), row.begin(), row.end());
    return v;
  };
  auto commutator = [](const ScalarMatrix& a, const ScalarMatrix& b) {
    const std::size_t n = a.size();
    ScalarMatrix c(n, ScalarVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k].is_zero() && b[i][k].is_zero())
          continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!a[i][k].is_zero())
            c[i][j].add_product(a[i][k], b[k][j]);
          if (!b[i][k].is_zero())
            c[i][j] -= b[i][k] * a[k][j];
        }
      }
    return c;
  };

  if (names.size() != basis.size())
    throw std::invalid_argument("lie_algebra_from_matrices: names and basis differ in length");
  ScalarMatrix flat;
  for (const auto& m : basis)
    flat.push_back(flatten(m));
  RowSpan span(flat);
  if (!span.independent())
    throw std::invalid_argument("lie_algebra_from_matrices: basis is linearly dependent");

  LieAlgebra alg(std::move(name), std::move(names));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      auto coords = span.coordinates(flatten(commutator(basis[a], basis[b])));
      if (!coords)
        throw std::invalid_argument("lie_algebra_from_matrices: span not closed under [" +
                                    alg.generator_names()[a] + ", " +
                                    alg.generator_names()[b] + "]");
      BracketExpansion terms;
      for (std::size_t k = 0; k < coords->size(); ++k)
        if (!(*coords)[k].is_zero())
          terms.push_back({k, (*coords)[k]});
      if (!terms.empty())
        alg.set_bracket(a, b, std::move(terms));
    }
  return alg;
}

LieAlgebra make_so3()
{
  LieAlgebra alg("so(3)", std::vector<std::string>{"X1", "X2", "X3"});
  alg.set_bracket(0, 1, {{2, GaussScalar(1)}});
  alg.set_bracket(1, 2, {{0, GaussScalar(1)}});
  alg.set_bracket(2, 0, {{1, GaussScalar(1)}});
  return alg;
}

LieAlgebra make_heisenberg()
{
  LieAlgebra alg("heisenberg", std::vector<std::string>{"X1", "X2", "X3"});
  alg.set_bracket(0, 1, {{2, GaussScalar(1)}});
  return alg;
}

LieAlgebra with_central_extension(const LieAlgebra& alg, std::size_t extra)
{
  auto names = alg.generator_names();
  for (std::size_t e = 0; e < extra; ++e)
    names.push_back("Z" + std::to_string(e + 1));
  LieAlgebra out(alg.name() + " + " + std::to_string(extra) + "-dim center", std::move(names));
  for (const auto& [key, terms] : alg.brackets())
    out.set_bracket(key.first, key.second, terms);
  return out;
}

LieAlgebra make_su3()
{
  auto e = [](std::size_t i, std::size_t j) {
    ScalarMatrix m(3, ScalarVector(3));
    m[i][j] = GaussScalar(1);
    return m;
  };
  auto diff = [&](std::size_t i, std::size_t j) {
    ScalarMatrix m = e(i, i);
    m[j][j] = GaussScalar(-1);
    return m;
  };
  return lie_algebra_from_matrices(
    "su(3)", {"E12", "E13", "E21", "E23", "E31", "E32", "H1", "H2"},
    {e(0, 1), e(0, 2), e(1, 0), e(1, 2), e(2, 0), e(2, 1), diff(0, 1), diff(1, 2)});
}

// ---------------------------------------------------------------------------

namespace {

GaussScalar scalar_from_json(const nlohmann::json& j, const std::string& path)
{
  if (j.is_number_integer())
    return GaussScalar(j.get<long>());
  if (j.is_string())
    return parse_scalar(j.get<std::string>());
  throw std::invalid_argument(path + ": expected a scalar string or integer");
}

template <class T>
T required(const nlohmann::json& j, const char* key, const std::string& path)
{
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(path + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(path + "." + key + ": wrong type");
  }
}

} // namespace

nlohmann::json algebra_to_json(const LieAlgebra& alg)
{
  nlohmann::json brackets = nlohmann::json::array();
  for (const auto& [key, terms] : alg.brackets()) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : terms)
      ts.push_back({{"k", t.k}, {"c", format_scalar(t.c)}});
    brackets.push_back({{"i", key.first}, {"j", key.second}, {"terms", ts}});
  }
  return {{"name", alg.name()},
          {"dim", alg.dim()},
          {"generators", alg.generator_names()},
          {"brackets", brackets}};
}

LieAlgebra algebra_from_json(const nlohmann::json& j)
{
  auto dim = required<std::size_t>(j, "dim", "algebra");
  std::string name = j.value("name", std::string("unnamed"));
  std::vector<std::string> names;
  if (j.contains("generators")) {
    names = required<std::vector<std::string>>(j, "generators", "algebra");
    if (names.size() != dim)
      throw std::invalid_argument("algebra.generators: expected " + std::to_string(dim) +
                                  " names");
  } else {
    for (std::size_t i = 0; i < dim; ++i)
      names.push_back("X" + std::to_string(i));
  }
  LieAlgebra alg(name, names);
  if (!j.contains("brackets"))
    return alg;
  const auto& bs = j.at("brackets");
  if (!bs.is_array())
    throw std::invalid_argument("algebra.brackets: expected an array");
  for (std::size_t b = 0; b < bs.size(); ++b) {
    std::string path = "algebra.brackets[" + std::to_string(b) + "]";
    auto i = required<std::size_t>(bs[b], "i", path);
    auto jj = required<std::size_t>(bs[b], "j", path);
    if (i >= jj)
      throw std::invalid_argument(path + ": require i < j");
    if (jj >= dim)
      throw std::invalid_argument(path + ": generator index out of range");
    BracketExpansion terms;
    const auto& ts = bs[b].contains("terms") ? bs[b].at("terms") : nlohmann::json::array();
    for (std::size_t t = 0; t < ts.size(); ++t) {
      std::string tp = path + ".terms[" + std::to_string(t) + "]";
      auto k = required<std::size_t>(ts[t], "k", tp);
      if (k >= dim)
        throw std::invalid_argument(tp + ": index k out of range");
      if (!ts[t].contains("c"))
        throw std::invalid_argument(tp + ": missing field 'c'");
      terms.push_back({k, scalar_from_json(ts[t].at("c"), tp + ".c")});
    }
    alg.set_bracket(i, jj, std::move(terms));
  }
  return alg;
}

} // namespace labkit
