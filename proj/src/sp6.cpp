#include "labkit/sp6.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include "labkit/charpoly.hpp"
#include "labkit/poly_io.hpp"

namespace labkit::sp6 {

namespace {

int sgn(int i) { return i > 0 ? 1 : -1; }

std::string index_name(int i) { return i > 0 ? std::to_string(i) : "m" + std::to_string(-i); }

struct RawRep
{
  int i, j;
  int sign; // X_canonical = sign * X(i,j)
};

std::vector<RawRep> raw_representatives(int i, int j)
{
  if (i > 0 && j > 0)
    return {{i, j, 1}, {-j, -i, -1}};
  // X(i,-j) = X(j,-i) and X(-i,j) = X(-j,i)
  if (std::abs(i) == std::abs(j))
    return {{i, j, 1}};
  return {{i, j, 1}, {-j, -i, 1}};
}

using RawExpansion = std::vector<std::pair<std::pair<int, int>, int>>;

RawExpansion racah_bracket(int i, int j, int k, int l)
{
  RawExpansion out;
  const int e = sgn(i) * sgn(j);
  if (j == k)
    out.push_back({{i, l}, 1});
  if (i == l)
    out.push_back({{k, j}, -1});
  if (j == -l)
    out.push_back({{k, -i}, e});
  if (i == -k)
    out.push_back({{-j, l}, -e});
  return out;
}

void check_range(int i)
{
  if (i == 0 || i < -3 || i > 3)
    throw std::out_of_range("sp6 index " + std::to_string(i) + " outside -3..3 \\ {0}");
}

} // namespace

Sp6Basis::Sp6Basis()
{
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      generators_.push_back({i, j});
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j)
      generators_.push_back({i, -j});
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j)
      generators_.push_back({-i, j});
  for (std::size_t a = 0; a < kDim; ++a)
    (a < 9 ? unitary_ : complement_).push_back(a);
}

std::pair<std::size_t, int> Sp6Basis::resolve(int i, int j) const
{
  check_range(i);
  check_range(j);
  for (std::size_t a = 0; a < kDim; ++a)
    for (const RawRep& r : raw_representatives(generators_[a].first, generators_[a].second))
      if (r.i == i && r.j == j)
        return {a, r.sign};
  throw std::logic_error("sp6 pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") has no canonical representative");
}

std::size_t Sp6Basis::index(int i, int j) const
{
  auto it = std::find(generators_.begin(), generators_.end(), std::pair{i, j});
  if (it == generators_.end())
    throw std::out_of_range("(" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not a canonical sp6 pair");
  return static_cast<std::size_t>(it - generators_.begin());
}

std::array<std::size_t, 3> Sp6Basis::diagonal() const
{
  return {index(1, 1), index(2, 2), index(3, 3)};
}

std::vector<std::string> Sp6Basis::names() const
{
  std::vector<std::string> out;
  for (const auto& [i, j] : generators_)
    out.push_back("X_" + index_name(i) + "_" + index_name(j));
  return out;
}

std::pair<LieAlgebra, Sp6Basis> build_sp6()
{
  Sp6Basis basis;
  LieAlgebra alg("sp6", basis.names());
  const auto& gens = basis.generators();

  auto expand = [&](const RawRep& u, const RawRep& v) {
    std::map<std::size_t, long> acc;
    for (const auto& [pair, c] : racah_bracket(u.i, u.j, v.i, v.j)) {
      auto [idx, s] = basis.resolve(pair.first, pair.second);
      acc[idx] += static_cast<long>(c) * s * u.sign * v.sign;
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
  };

  for (std::size_t a = 0; a < Sp6Basis::kDim; ++a) {
    const auto reps_a = raw_representatives(gens[a].first, gens[a].second);
    for (std::size_t b = a; b < Sp6Basis::kDim; ++b) {
      const auto reps_b = raw_representatives(gens[b].first, gens[b].second);
      const auto reference = expand(reps_a[0], reps_b[0]);
      for (const RawRep& u : reps_a)
        for (const RawRep& v : reps_b)
          if (expand(u, v) != reference)
            throw std::logic_error("sp6 bracket of " + alg.generator_names()[a] + " and " +
                                   alg.generator_names()[b] +
                                   " depends on the raw representative");
      if (a == b) {
        if (!reference.empty())
          throw std::logic_error("sp6 bracket of " + alg.generator_names()[a] +
                                 " with itself is nonzero");
        continue;
      }
      BracketExpansion terms;
      for (const auto& [k, c] : reference)
        terms.push_back({k, GaussScalar(c)});
      if (!terms.empty())
        alg.set_bracket(a, b, std::move(terms));
    }
  }
  return {std::move(alg), std::move(basis)};
}

std::string MatrixConvention::describe() const
{
  std::string s = transpose_unitary_block ? "upper-left block x(j,i) at (i,j)"
                                          : "upper-left block x(i,j) at (i,j)";
  s += conjugate_lower_phase ? ", off-diagonal phases (+i, -i)" : ", off-diagonal phases (+i, +i)";
  return s;
}

std::vector<MatrixConvention> candidate_conventions()
{
  return {{false, false}, {true, false}, {false, true}, {true, true}};
}

PolyMatrix build_m_matrix(const Sp6Basis& basis, const MatrixConvention& convention)
{
  auto x = [&](int i, int j) {
    auto [idx, s] = basis.resolve(i, j);
    return Poly::variable(static_cast<VarIndex>(idx)) * GaussScalar(s);
  };
  const GaussScalar upper_phase = GaussScalar::imaginary_unit();
  const GaussScalar lower_phase =
    convention.conjugate_lower_phase ? -GaussScalar::imaginary_unit() : GaussScalar::imaginary_unit();

  PolyMatrix m(6, std::vector<Poly>(6));
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      m[r - 1][c - 1] = convention.transpose_unitary_block ? x(c, r) : x(r, c);
      m[r - 1][c + 2] = x(-r, c) * upper_phase;
      m[r + 2][c - 1] = x(r, -c) * lower_phase;
      m[r + 2][c + 2] = -x(r, c);
    }
  return m;
}

namespace {

/// Empty string when the coefficients pass every gate, else the reason.
std::string casimir_gate(const LieAlgebra& alg, const std::vector<Poly>& coeffs)
{
  for (std::size_t k : {1u, 3u, 5u})
    if (!coeffs[k].is_zero())
      return "coefficient of T^" + std::to_string(k) + " is nonzero";
  for (std::size_t k : {0u, 2u, 4u}) {
    if (!coeffs[k].is_real())
      return "coefficient of T^" + std::to_string(k) + " is not real";
    if (auto bad = first_non_annihilating(alg, coeffs[k]))
      return "coefficient of T^" + std::to_string(k) + " is not annihilated by " +
             alg.generator_names()[*bad];
  }
  return {};
}

} // namespace

CasimirResult build_m_and_casimirs(const LieAlgebra& alg, const Sp6Basis& basis)
{
  CasimirResult result;
  for (const MatrixConvention& conv : candidate_conventions()) {
    auto coeffs = char_poly_det(build_m_matrix(basis, conv));
    if (!(coeffs[6] == Poly(1)))
      throw std::logic_error("leading coefficient of det(M - T) is not 1");
    std::string reason = casimir_gate(alg, coeffs);
    if (!reason.empty()) {
      result.rejected.push_back({conv, std::move(reason)});
      continue;
    }
    result.C2 = coeffs[4];
    result.C4 = coeffs[2];
    result.C6 = coeffs[0];
    result.coefficients = std::move(coeffs);
    result.convention = conv;
    return result;
  }
  std::string msg = "no matrix convention yields invariant coefficients:";
  for (const auto& [conv, reason] : result.rejected)
    msg += " [" + conv.describe() + ": " + reason + "]";
  throw std::runtime_error(msg);
}

std::vector<ScalarMatrix> defining_matrices(const Sp6Basis& basis)
{
  auto pos = [](int i) { return static_cast<std::size_t>(i > 0 ? i - 1 : 2 - i); };
  std::vector<ScalarMatrix> out;
  for (const auto& [i, j] : basis.generators()) {
    ScalarMatrix m(6, ScalarVector(6));
    m[pos(i)][pos(j)] += GaussScalar(1);
    m[pos(-j)][pos(-i)] -= GaussScalar(sgn(i) * sgn(j));
    out.push_back(std::move(m));
  }
  return out;
}

ModularRepresentation witness_representation(const ChainArtifacts& a)
{
  const ScalarMatrix rows = h_basis_rows(a.basis);
  const auto base = defining_matrices(a.basis);
  std::vector<ScalarMatrix> images;
  for (const ScalarVector& r : rows) {
    ScalarMatrix m(6, ScalarVector(6));
    for (std::size_t b = 0; b < r.size(); ++b)
      if (!r[b].is_zero())
        for (std::size_t p = 0; p < 6; ++p)
          for (std::size_t q = 0; q < 6; ++q)
            m[p][q].add_product(r[b], base[b][p][q]);
    images.push_back(std::move(m));
  }
  const ModularRepresentation ad = ModularRepresentation::adjoint(a.adapted);
  return ModularRepresentation::tensor(ModularRepresentation::tensor(ad, ad),
                                       ModularRepresentation(a.adapted, images));
}

ScalarMatrix h_basis_rows(const Sp6Basis& basis)
{
  ScalarMatrix rows = identity_matrix(Sp6Basis::kDim);
  const auto d = basis.diagonal();
  for (std::size_t r : d)
    rows[r] = ScalarVector(Sp6Basis::kDim);
  rows[d[0]][d[0]] = GaussScalar(1);
  rows[d[0]][d[1]] = GaussScalar(-1);
  rows[d[1]][d[1]] = GaussScalar(1);
  rows[d[1]][d[2]] = GaussScalar(-1);
  for (std::size_t c : d)
    rows[d[2]][c] = GaussScalar(1);
  return rows;
}

ReductionChain build_chain(const LieAlgebra& alg, const Sp6Basis& basis)
{
  ReductionChain chain;
  chain.ambient = alg;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) {
        ScalarVector row(Sp6Basis::kDim);
        row[basis.index(i, j)] = GaussScalar(1);
        chain.sub_rows.push_back(std::move(row));
      }
  const ScalarMatrix rows = h_basis_rows(basis);
  for (std::size_t r : basis.diagonal())
    chain.sub_rows.push_back(rows[r]);
  chain.l_prime = 0;
  std::vector<VarIndex> comp;
  for (std::size_t c : basis.complement_block())
    comp.push_back(static_cast<VarIndex>(c));
  chain.complement_vars = std::move(comp);

  auto v = validate_chain(chain);
  if (!v.ok)
    throw std::logic_error("sp6 > su(3) x u(1) chain invalid: " + v.message);
  return chain;
}

Labels extract_labels(ChainArtifacts& a)
{
  const auto& comp = *a.adapted_chain.complement_vars;
  a.C4_split = grading_split(a.hC4, comp);
  a.C6_split = grading_split(a.hC6, comp);
  for (const auto* split : {&a.C4_split, &a.C6_split})
    for (const auto& [deg, component] : *split)
      if (deg % 2 != 0)
        throw std::runtime_error("odd complement degree " + std::to_string(deg) +
                                 " in a Casimir split");
  auto component = [](const std::map<std::size_t, GradedComponent>& split, std::size_t deg) {
    auto it = split.find(deg);
    if (it == split.end())
      throw std::runtime_error("missing complement degree " + std::to_string(deg));
    return it->second.poly;
  };
  a.C22 = component(a.C4_split, 2);
  a.C42 = component(a.C6_split, 4);
  a.C24 = component(a.C6_split, 2);
  return {a.C22, a.C42, a.C24};
}

SubCasimirs sub_casimirs(const ChainArtifacts& a)
{
  const auto images = dual_substitution(h_basis_rows(a.basis));
  const auto d = a.basis.diagonal();
  const Poly h3 = Poly::variable(static_cast<VarIndex>(d[2]));
  const GaussScalar third = GaussScalar(1) / GaussScalar(3);

  PolyMatrix u(3, std::vector<Poly>(3));
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      const Poly entry = Poly::variable(static_cast<VarIndex>(a.basis.index(r, c)));
      u[r - 1][c - 1] = r == c ? substitute_linear(entry, images) - h3 * third : entry;
    }
  auto coeffs = char_poly_det(u);
  if (!coeffs[2].is_zero())
    throw std::logic_error("traceless unitary block has nonzero trace");
  return {coeffs[1], coeffs[0], h3};
}

namespace {

/// Fills the adapted algebra, the adapted chain and the h-basis Casimirs.
void adapt(ChainArtifacts& a)
{
  const ScalarMatrix rows = h_basis_rows(a.basis);
  std::vector<std::string> names = a.basis.names();
  const auto d = a.basis.diagonal();
  for (std::size_t k = 0; k < 3; ++k)
    names[d[k]] = "H" + std::to_string(k + 1);
  a.adapted = change_basis(a.algebra, rows, names);

  a.adapted_chain = ReductionChain{};
  a.adapted_chain.ambient = a.adapted;
  for (std::size_t u : a.basis.unitary_block()) {
    ScalarVector row(Sp6Basis::kDim);
    row[u] = GaussScalar(1);
    a.adapted_chain.sub_rows.push_back(std::move(row));
  }
  a.adapted_chain.complement_vars = a.chain.complement_vars;

  const auto images = dual_substitution(rows);
  a.hC2 = substitute_linear(a.casimirs.C2, images);
  a.hC4 = substitute_linear(a.casimirs.C4, images);
  a.hC6 = substitute_linear(a.casimirs.C6, images);
}

void fill_sub_casimirs(ChainArtifacts& a)
{
  auto sub = sub_casimirs(a);
  a.c2 = std::move(sub.c2);
  a.c3 = std::move(sub.c3);
  a.h3 = std::move(sub.h3);
}

} // namespace

ChainArtifacts build_artifacts()
{
  ChainArtifacts a;
  std::tie(a.algebra, a.basis) = build_sp6();
  a.casimirs = build_m_and_casimirs(a.algebra, a.basis);
  a.chain = build_chain(a.algebra, a.basis);
  adapt(a);
  extract_labels(a);
  fill_sub_casimirs(a);
  return a;
}

// --- verification -----------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

nlohmann::json poly_json(const Poly& p)
{
  constexpr std::size_t kMaxText = 4000;
  std::string text = format_poly(p);
  nlohmann::json j{{"terms", p.size()}};
  if (text.size() > kMaxText)
    j["text_prefix"] = text.substr(0, kMaxText);
  else
    j["text"] = text;
  return j;
}

std::size_t component_size(const std::map<std::size_t, GradedComponent>& split, std::size_t deg)
{
  auto it = split.find(deg);
  return it == split.end() ? 0 : it->second.poly.size();
}

} // namespace

nlohmann::json VerifyReport::to_json() const
{
  nlohmann::json checks_j = nlohmann::json::array();
  for (const Check& c : checks)
    checks_j.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", ok},
          {"matrix_convention", convention.describe()},
          {"checks", checks_j},
          {"term_counts", term_counts}};
}

std::string VerifyReport::summary() const
{
  std::ostringstream os;
  for (const Check& c : checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
  os << "matrix convention: " << convention.describe() << "\n";
  os << "term counts (h basis): C(2,2)=" << term_counts["h_basis"]["C22"]
     << " C(2,4)=" << term_counts["h_basis"]["C24"] << " C(4,2)=" << term_counts["h_basis"]["C42"]
     << "; reference 126, 686, 444\n";
  for (const auto& [stage, ms] : timings)
    os << "time " << stage << ": " << static_cast<long>(ms) << " ms\n";
  os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

VerifyReport verify_all(std::uint64_t seed)
{
  VerifyReport rep;
  auto add = [&](std::string name, bool passed, nlohmann::json detail = nlohmann::json::object()) {
    rep.ok = rep.ok && passed;
    rep.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  auto t0 = Clock::now();

  ChainArtifacts a;
  std::tie(a.algebra, a.basis) = build_sp6();
  {
    auto jr = validate(a.algebra);
    nlohmann::json failing = nlohmann::json::array();
    for (const auto& t : jr.failing_triples)
      failing.push_back({t[0], t[1], t[2]});
    add("jacobi", jr.ok && jr.triples_checked == 1330 && a.algebra.dim() == 21,
        {{"dim", a.algebra.dim()}, {"triples_checked", jr.triples_checked}, {"failing", failing}});
  }
  rep.timings.push_back({"build_sp6", ms_since(t0)});

  t0 = Clock::now();
  {
    nlohmann::json counts = nlohmann::json::array();
    bool all3 = true;
    for (std::uint64_t s = seed; s < seed + 3; ++s) {
      RankOptions opt;
      opt.seed = s;
      std::size_t n = invariant_count(a.algebra, opt);
      counts.push_back(n);
      all3 = all3 && n == 3;
    }
    add("invariant_count", all3, {{"counts", counts}, {"expected", 3}});
  }
  rep.timings.push_back({"invariant_count", ms_since(t0)});

  t0 = Clock::now();
  a.casimirs = build_m_and_casimirs(a.algebra, a.basis);
  rep.convention = a.casimirs.convention;
  {
    nlohmann::json rejected = nlohmann::json::array();
    for (const auto& [conv, reason] : a.casimirs.rejected)
      rejected.push_back({{"convention", conv.describe()}, {"reason", reason}});
    const auto& co = a.casimirs.coefficients;
    bool odd_zero = co[1].is_zero() && co[3].is_zero() && co[5].is_zero();
    add("odd_coefficients_vanish", odd_zero, {{"rejected_conventions", rejected}});
    const std::array<std::pair<const char*, const Poly*>, 3> cs{
      {{"C2", &a.casimirs.C2}, {"C4", &a.casimirs.C4}, {"C6", &a.casimirs.C6}}};
    std::uint32_t expected_deg = 2;
    for (const auto& [name, p] : cs) {
      auto bad = first_non_annihilating(a.algebra, *p);
      bool ok = !bad && p->is_real() && p->is_homogeneous() && p->degree() == expected_deg;
      nlohmann::json detail{{"terms", p->size()}, {"degree", expected_deg}};
      if (bad)
        detail["failing_generator"] = a.algebra.generator_names()[*bad];
      if (!ok)
        detail["poly"] = poly_json(*p);
      add(std::string("invariance_") + name, ok, detail);
      expected_deg += 2;
    }
  }
  rep.timings.push_back({"casimirs", ms_since(t0)});

  t0 = Clock::now();
  a.chain = build_chain(a.algebra, a.basis);
  {
    auto v = validate_chain(a.chain);
    RankOptions opt;
    opt.seed = seed;
    MlpReport m = mlp_count(a.chain, opt);
    add("mlp_count", m.n_missing == 3 && m.m_available == 6 && m.consistent &&
                       m.n_subgroup_scalars == 12,
        mlp_report_to_json(m));
    std::size_t sub_n = v.subalgebra ? invariant_count(*v.subalgebra, opt) : 0;
    bool h3_central = true;
    const ScalarVector& h3row = a.chain.sub_rows.back();
    for (const ScalarVector& row : a.chain.sub_rows)
      for (const GaussScalar& c : a.chain.ambient.bracket(h3row, row))
        h3_central = h3_central && c.is_zero();
    add("subalgebra_structure", v.ok && sub_n == 3 && h3_central,
        {{"subalgebra_invariant_count", sub_n}, {"h3_central", h3_central}});
  }
  rep.timings.push_back({"chain", ms_since(t0)});

  t0 = Clock::now();
  adapt(a);
  bool labels_ok = true;
  try {
    extract_labels(a);
  } catch (const std::exception& e) {
    labels_ok = false;
    add("grading", false, {{"error", e.what()}});
  }
  if (labels_ok) {
    auto keys = [](const std::map<std::size_t, GradedComponent>& s) {
      std::vector<std::size_t> k;
      for (const auto& [deg, c] : s)
        k.push_back(deg);
      return k;
    };
    auto reassemble = [](const std::map<std::size_t, GradedComponent>& s) {
      Poly sum;
      for (const auto& [deg, c] : s)
        sum += c.poly;
      return sum;
    };
    auto k4 = keys(a.C4_split), k6 = keys(a.C6_split);
    bool shape = k4 == std::vector<std::size_t>{0, 2, 4} && k6 == std::vector<std::size_t>{0, 2, 4, 6};
    bool back = reassemble(a.C4_split) == a.hC4 && reassemble(a.C6_split) == a.hC6;
    add("grading", shape && back, {{"C4_degrees", k4}, {"C6_degrees", k6}, {"reassembles", back}});

    const std::array<std::pair<const char*, const Poly*>, 3> labels{
      {{"C22", &a.C22}, {"C42", &a.C42}, {"C24", &a.C24}}};
    const std::array<std::array<std::uint32_t, 2>, 3> bideg{{{2, 2}, {4, 2}, {2, 4}}};
    const auto& comp = *a.adapted_chain.complement_vars;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& [name, p] = labels[k];
      auto failing = first_failing_row(a.adapted_chain, *p);
      std::optional<std::size_t> witness;
      for (VarIndex c : comp)
        if (!diffop_apply(a.adapted, c, *p).is_zero()) {
          witness = c;
          break;
        }
      auto split = grading_split(*p, comp);
      bool bidegree_ok = split.size() == 1 && split.begin()->first == bideg[k][0] &&
                         split.begin()->second.remaining_degree == bideg[k][1];
      nlohmann::json detail{{"terms", p->size()}, {"bidegree", bideg[k]}};
      if (failing)
        detail["failing_row"] = *failing;
      if (witness)
        detail["non_annihilating_complement_generator"] = a.adapted.generator_names()[*witness];
      bool ok = !failing && witness.has_value() && bidegree_ok && !p->is_zero();
      if (!ok)
        detail["poly"] = poly_json(*p);
      add(std::string("subgroup_scalar_") + name, ok, detail);
    }
  }
  rep.timings.push_back({"labels", ms_since(t0)});

  t0 = Clock::now();
  {
    fill_sub_casimirs(a);
    bool ok = true;
    nlohmann::json detail = nlohmann::json::object();
    for (const auto& [name, p, deg] : std::array<std::tuple<const char*, const Poly*, std::uint32_t>, 3>{
           {{"c2", &a.c2, 2u}, {"c3", &a.c3, 3u}, {"h3", &a.h3, 1u}}}) {
      bool this_ok = is_subgroup_scalar(a.adapted_chain, *p) && p->is_homogeneous() &&
                     p->degree() == deg;
      detail[name] = {{"terms", p->size()}, {"ok", this_ok}};
      ok = ok && this_ok;
    }
    add("subalgebra_casimirs", ok, detail);
  }
  rep.timings.push_back({"sub_casimirs", ms_since(t0)});

  if (labels_ok) {
    t0 = Clock::now();
    const std::array<std::pair<std::string, std::pair<const Poly*, const Poly*>>, 3> pairs{
      {{"C22,C42", {&a.C22, &a.C42}}, {"C22,C24", {&a.C22, &a.C24}}, {"C24,C42", {&a.C24, &a.C42}}}};
    std::vector<std::future<Poly>> brackets;
    for (const auto& [id, fg] : pairs)
      brackets.push_back(std::async(std::launch::async, [&alg = a.adapted, fg] {
        return berezin_bracket(alg, *fg.first, *fg.second);
      }));
    for (std::size_t k = 0; k < 3; ++k) {
      Poly b = brackets[k].get();
      nlohmann::json detail{{"terms", b.size()}};
      if (!b.is_zero())
        detail["bracket"] = poly_json(b);
      add("berezin_" + pairs[k].first, b.is_zero(), detail);
    }
    rep.timings.push_back({"berezin", ms_since(t0)});

    t0 = Clock::now();
    const ModularRepresentation witness_rep = witness_representation(a);
    for (const auto& [id, fg] : pairs) {
      auto cert = certify_commuting(a.adapted, *fg.first, *fg.second, OracleBudget{}, id, &witness_rep);
      add("certificate_" + id, cert.verdict == Verdict::CertifiedCommuting,
          certificate_to_json(cert));
    }
    rep.timings.push_back({"certificates", ms_since(t0)});

    t0 = Clock::now();
    RankOptions opt;
    opt.seed = seed;
    std::vector<Poly> nine{a.hC2, a.hC4, a.hC6, a.c2, a.c3, a.h3, a.C22, a.C42, a.C24};
    std::size_t r = functional_independence(nine, Sp6Basis::kDim, opt);
    add("functional_independence", r == 9, {{"rank", r}, {"expected", 9}, {"samples", opt.samples}});
    rep.timings.push_back({"independence", ms_since(t0)});
  }

  // Term counts in both coordinate systems: the grading of the original
  // Casimirs uses the same complement variables.
  const auto& comp = *a.chain.complement_vars;
  auto x4 = grading_split(a.casimirs.C4, comp);
  auto x6 = grading_split(a.casimirs.C6, comp);
  rep.term_counts = {
    {"h_basis", {{"C22", a.C22.size()}, {"C24", a.C24.size()}, {"C42", a.C42.size()}}},
    {"x_basis",
     {{"C22", component_size(x4, 2)}, {"C24", component_size(x6, 2)}, {"C42", component_size(x6, 4)}}},
    {"reference", {{"C22", kReferenceTermCounts[0]}, {"C24", kReferenceTermCounts[1]},
                   {"C42", kReferenceTermCounts[2]}}},
    {"casimirs", {{"C2", a.casimirs.C2.size()}, {"C4", a.casimirs.C4.size()},
                  {"C6", a.casimirs.C6.size()}}},
    {"normalization", "det(M - T Id) with leading coefficient +1; h basis: x11 -> (h3 + 2 h1 + h2)/3, "
                      "x22 -> (h3 - h1 + h2)/3, x33 -> (h3 - h1 - 2 h2)/3"}};
  return rep;
}

std::vector<std::string> export_artifacts(const ChainArtifacts& a, const std::string& directory)
{
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& content) {
    fs::path p = fs::path(directory) / name;
    std::ofstream out(p);
    if (!out)
      throw std::runtime_error("cannot write " + p.string());
    out << content;
    if (!content.empty() && content.back() != '\n')
      out << '\n';
    written.push_back(p.string());
  };
  write("sp6.json", algebra_to_json(a.algebra).dump(2));
  write("sp6_adapted.json", algebra_to_json(a.adapted).dump(2));
  write("sp6_u3.json", chain_to_json(a.chain).dump(2));
  write("sp6_u3_adapted.json", chain_to_json(a.adapted_chain).dump(2));
  const std::array<std::pair<const char*, const Poly*>, 12> polys{
    {{"C2.txt", &a.casimirs.C2}, {"C4.txt", &a.casimirs.C4}, {"C6.txt", &a.casimirs.C6},
     {"hC2.txt", &a.hC2}, {"hC4.txt", &a.hC4}, {"hC6.txt", &a.hC6},
     {"C22.txt", &a.C22}, {"C42.txt", &a.C42}, {"C24.txt", &a.C24},
     {"c2.txt", &a.c2}, {"c3.txt", &a.c3}, {"h3.txt", &a.h3}}};
  for (const auto& [name, p] : polys)
    write(name, format_poly(*p));
  auto comp = [](const std::map<std::size_t, GradedComponent>& s, std::size_t deg) {
    auto it = s.find(deg);
    return it == s.end() ? Poly() : it->second.poly;
  };
  write("C40.txt", format_poly(comp(a.C4_split, 4)));
  write("C04.txt", format_poly(comp(a.C4_split, 0)));
  write("C60.txt", format_poly(comp(a.C6_split, 6)));
  write("C06.txt", format_poly(comp(a.C6_split, 0)));
  return written;
}

} // namespace labkit::sp6
