#include "labkit/labeling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "labkit/modular.hpp"
#include "labkit/poly_io.hpp"

namespace labkit {

ChainValidation validate_chain(const ReductionChain& chain)
{
  ChainValidation v;
  const LieAlgebra& g = chain.ambient;
  const std::size_t n = g.dim();
  for (std::size_t a = 0; a < chain.sub_rows.size(); ++a)
    if (chain.sub_rows[a].size() != n) {
      v.problem = ChainProblem::BadRowLength;
      v.message = "row " + std::to_string(a) + " has " +
                  std::to_string(chain.sub_rows[a].size()) + " entries, expected " +
                  std::to_string(n);
      return v;
    }

  RowSpan span(chain.sub_rows);
  if (!span.independent()) {
    v.problem = ChainProblem::DependentRows;
    v.message = "subalgebra rows are linearly dependent (rank " + std::to_string(span.rank()) +
                " < " + std::to_string(chain.sub_rows.size()) + ")";
    return v;
  }

  std::vector<std::string> names;
  for (std::size_t a = 0; a < chain.sub_rows.size(); ++a) {
    const auto& row = chain.sub_rows[a];
    auto nz = std::count_if(row.begin(), row.end(), [](const auto& c) { return !c.is_zero(); });
    auto unit = std::find_if(row.begin(), row.end(), [](const auto& c) { return c.is_one(); });
    if (nz == 1 && unit != row.end())
      names.push_back(g.generator_names()[static_cast<std::size_t>(unit - row.begin())]);
    else
      names.push_back("Y" + std::to_string(a));
  }
  LieAlgebra sub(g.name() + " subalgebra", names);
  for (std::size_t a = 0; a < chain.sub_rows.size(); ++a)
    for (std::size_t b = a + 1; b < chain.sub_rows.size(); ++b) {
      auto coords = span.coordinates(g.bracket(chain.sub_rows[a], chain.sub_rows[b]));
      if (!coords) {
        v.problem = ChainProblem::NotClosed;
        v.offending_pair = std::make_pair(a, b);
        v.message = "bracket of rows " + std::to_string(a) + " and " + std::to_string(b) +
                    " leaves the span";
        return v;
      }
      BracketExpansion terms;
      for (std::size_t k = 0; k < coords->size(); ++k)
        if (!(*coords)[k].is_zero())
          terms.push_back({k, (*coords)[k]});
      if (!terms.empty())
        sub.set_bracket(a, b, std::move(terms));
    }

  if (chain.complement_vars) {
    const auto& comp = *chain.complement_vars;
    std::set<VarIndex> seen;
    for (VarIndex c : comp) {
      if (c >= n || !seen.insert(c).second) {
        v.problem = ChainProblem::BadComplement;
        v.message = "complement variable x" + std::to_string(c) + " out of range or repeated";
        return v;
      }
    }
    for (std::size_t a = 0; a < chain.sub_rows.size(); ++a)
      for (VarIndex c : comp)
        if (!chain.sub_rows[a][c].is_zero()) {
          v.problem = ChainProblem::BadComplement;
          v.message = "row " + std::to_string(a) + " involves complement generator " +
                      std::to_string(c) + "; grading needs a sub-basis embedding";
          return v;
        }
    if (comp.size() + chain.sub_rows.size() != n) {
      v.problem = ChainProblem::BadComplement;
      v.message = "complement has " + std::to_string(comp.size()) + " variables, expected " +
                  std::to_string(n - chain.sub_rows.size());
      return v;
    }
  }

  v.ok = true;
  v.subalgebra = std::move(sub);
  return v;
}

MlpReport mlp_count(const ReductionChain& chain, const RankOptions& options)
{
  ChainValidation v = validate_chain(chain);
  if (!v.ok)
    throw std::invalid_argument("mlp_count: invalid chain: " + v.message);
  MlpReport r;
  r.dim_g = chain.ambient.dim();
  r.dim_h = v.subalgebra->dim();
  r.N_g = invariant_count(chain.ambient, options);
  r.N_h = invariant_count(*v.subalgebra, options);
  r.l_prime = chain.l_prime;
  const long twice = static_cast<long>(r.dim_g) - static_cast<long>(r.N_g) -
                     static_cast<long>(r.dim_h) - static_cast<long>(r.N_h);
  if (twice % 2 != 0)
    throw std::invalid_argument("mlp_count: dim g - N(g) - dim h - N(h) = " +
                                std::to_string(twice) + " is odd");
  const long n = twice / 2 + static_cast<long>(r.l_prime);
  if (n < 0)
    throw std::invalid_argument("mlp_count: negative label count " + std::to_string(n) +
                                "; l' is too small for this chain");
  r.n_missing = static_cast<std::size_t>(n);
  r.m_available = 2 * r.n_missing;
  r.n_subgroup_scalars = r.dim_g - r.dim_h + r.l_prime;
  r.n_subgroup_scalars_from_labels = static_cast<long>(r.m_available + r.N_g + r.N_h) -
                                     static_cast<long>(r.l_prime);
  r.consistent = r.n_subgroup_scalars_from_labels == static_cast<long>(r.n_subgroup_scalars);
  return r;
}

std::optional<std::size_t> first_failing_row(const ReductionChain& chain, const Poly& f)
{
  for (std::size_t a = 0; a < chain.sub_rows.size(); ++a)
    if (!diffop_apply(chain.ambient, chain.sub_rows[a], f).is_zero())
      return a;
  return std::nullopt;
}

bool is_subgroup_scalar(const ReductionChain& chain, const Poly& f)
{
  return !first_failing_row(chain, f).has_value();
}

bool depends_only_on_subalgebra(const ReductionChain& chain, const Poly& f)
{
  if (!chain.complement_vars)
    throw std::invalid_argument("depends_only_on_subalgebra: chain has no complement variables");
  const auto& comp = *chain.complement_vars;
  for (VarIndex v : f.support())
    if (std::find(comp.begin(), comp.end(), v) != comp.end())
      return false;
  return true;
}

std::map<std::size_t, GradedComponent> grading_split(const Poly& f,
                                                     const std::vector<VarIndex>& complement_vars)
{
  std::set<VarIndex> comp(complement_vars.begin(), complement_vars.end());
  const std::size_t total = f.degree().value_or(0);
  std::map<std::size_t, GradedComponent> out;
  for (const auto& [m, c] : f.terms()) {
    std::size_t k = 0;
    for (const auto& [v, e] : m.factors())
      if (comp.count(v))
        k += e;
    auto& slot = out[k];
    slot.complement_degree = k;
    slot.remaining_degree = total - k;
    slot.poly.add_term(m, c);
  }
  return out;
}

std::size_t functional_independence(const std::vector<Poly>& polys, std::size_t n_vars,
                                    const RankOptions& options)
{
  for (const auto& p : polys)
    if (p.var_bound() > n_vars)
      throw std::out_of_range("functional_independence: polynomial uses a variable beyond n_vars");
  std::vector<std::vector<Poly>> jac(polys.size(), std::vector<Poly>(n_vars));
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (VarIndex v : polys[i].support())
      jac[i][v] = derivative(polys[i], v);

  std::mt19937_64 rng(options.seed);
  std::size_t best = 0;
  for (std::size_t s = 0; s < std::max<std::size_t>(options.samples, 1); ++s) {
    auto pt = modular::random_point(n_vars, rng);
    std::vector<std::vector<std::uint64_t>> m(polys.size(), std::vector<std::uint64_t>(n_vars));
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = 0; j < n_vars; ++j)
        m[i][j] = jac[i][j].is_zero() ? 0 : modular::evaluate(jac[i][j], pt);
    best = std::max(best, modular::rank(std::move(m)));
  }
  return best;
}

CommutativityCertificate certify_commuting(const LieAlgebra& alg, const Poly& f, const Poly& g,
                                           const OracleBudget& budget, std::string pair_id,
                                           const ModularRepresentation* witness_rep)
{
  if (!f.is_homogeneous() || !g.is_homogeneous())
    throw std::invalid_argument("certify_commuting: inputs must be homogeneous");

  CommutativityCertificate cert;
  cert.pair_id = std::move(pair_id);
  cert.bracket_vanishes = berezin_bracket(alg, f, g).is_zero();

  if (f.is_zero() || g.is_zero()) {
    cert.nonfactorizable = FactorizabilityState::NotApplicable;
    cert.oracle_used = true;
    cert.oracle_zero = true;
    cert.verdict = Verdict::CertifiedCommuting;
    return cert;
  }

  FactorizabilityResult fz = certify_nonfactorizable(alg, f, g);
  cert.witness = fz.witness;
  if (fz.status == Factorizability::NonFactorizable) {
    cert.nonfactorizable = FactorizabilityState::NonFactorizable;
    cert.verdict = cert.bracket_vanishes ? Verdict::CertifiedCommuting
                                         : Verdict::CertifiedNonCommuting;
    return cert;
  }

  cert.nonfactorizable = FactorizabilityState::PossiblyFactorizable;
  const std::size_t total = *f.degree() + *g.degree();
  if (total <= budget.max_total_degree && alg.dim() <= budget.max_dim) {
    PbwNormalizer pbw(alg);
    NCPoly comm = pbw.commutator(pbw.symmetrize(f), pbw.symmetrize(g));
    cert.oracle_used = true;
    cert.oracle_zero = comm.is_zero();
    cert.verdict = comm.is_zero() ? Verdict::CertifiedCommuting : Verdict::CertifiedNonCommuting;
    return cert;
  }
  cert.verdict = Verdict::Inconclusive;
  if (witness_rep) {
    cert.representation_witness = noncommutation_witness(*witness_rep, f, g);
    if (cert.representation_witness)
      cert.verdict = Verdict::CertifiedNonCommuting;
  }
  return cert;
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::CertifiedCommuting: return "CertifiedCommuting";
  case Verdict::CertifiedNonCommuting: return "CertifiedNonCommuting";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(FactorizabilityState s)
{
  switch (s) {
  case FactorizabilityState::NonFactorizable: return "NonFactorizable";
  case FactorizabilityState::PossiblyFactorizable: return "PossiblyFactorizable";
  case FactorizabilityState::NotApplicable: return "NotApplicable";
  }
  return "?";
}

nlohmann::json certificate_to_json(const CommutativityCertificate& c)
{
  nlohmann::json j{{"pair_id", c.pair_id},
                   {"nonfactorizable", to_string(c.nonfactorizable)},
                   {"bracket_vanishes", c.bracket_vanishes},
                   {"verdict", to_string(c.verdict)},
                   {"oracle_used", c.oracle_used},
                   {"oracle_zero", nullptr},
                   {"witness", nullptr},
                   {"representation_witness", nullptr}};
  if (c.representation_witness)
    j["representation_witness"] = {{"rep_dim", c.representation_witness->rep_dim},
                                   {"seed", c.representation_witness->seed},
                                   {"nonzero_components",
                                    c.representation_witness->nonzero_components}};
  if (c.oracle_zero)
    j["oracle_zero"] = *c.oracle_zero;
  if (c.witness)
    j["witness"] = {{"left", format_poly(Poly::term(c.witness->left, 1))},
                    {"right", format_poly(Poly::term(c.witness->right, 1))},
                    {"shared", format_poly(Poly::term(c.witness->shared, 1))}};
  return j;
}

nlohmann::json mlp_report_to_json(const MlpReport& r)
{
  return {{"dim_g", r.dim_g},
          {"dim_h", r.dim_h},
          {"N_g", r.N_g},
          {"N_h", r.N_h},
          {"l_prime", r.l_prime},
          {"n_missing", r.n_missing},
          {"m_available", r.m_available},
          {"n_subgroup_scalars", r.n_subgroup_scalars},
          {"n_subgroup_scalars_from_labels", r.n_subgroup_scalars_from_labels},
          {"consistent", r.consistent}};
}

nlohmann::json chain_to_json(const ReductionChain& chain)
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : chain.sub_rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row)
      r.push_back(format_scalar(c));
    rows.push_back(r);
  }
  nlohmann::json j{{"algebra", algebra_to_json(chain.ambient)},
                   {"sub_rows", rows},
                   {"l_prime", chain.l_prime}};
  if (chain.complement_vars)
    j["complement_vars"] = *chain.complement_vars;
  return j;
}

ReductionChain chain_from_json(const nlohmann::json& j,
                               const std::function<nlohmann::json(const std::string&)>&
                                 load_algebra_file)
{
  if (!j.is_object() || !j.contains("algebra"))
    throw std::invalid_argument("chain: missing field 'algebra'");
  ReductionChain chain;
  const auto& a = j.at("algebra");
  if (a.is_string()) {
    if (!load_algebra_file)
      throw std::invalid_argument("chain.algebra: file references are not supported here");
    chain.ambient = algebra_from_json(load_algebra_file(a.get<std::string>()));
  } else {
    chain.ambient = algebra_from_json(a);
  }
  if (!j.contains("sub_rows") || !j.at("sub_rows").is_array())
    throw std::invalid_argument("chain: missing array 'sub_rows'");
  const auto& rows = j.at("sub_rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array())
      throw std::invalid_argument("chain.sub_rows[" + std::to_string(r) + "]: expected an array");
    ScalarVector row;
    for (const auto& c : rows[r]) {
      if (c.is_number_integer())
        row.push_back(GaussScalar(c.get<long>()));
      else if (c.is_string())
        row.push_back(parse_scalar(c.get<std::string>()));
      else
        throw std::invalid_argument("chain.sub_rows[" + std::to_string(r) +
                                    "]: expected scalar strings");
    }
    chain.sub_rows.push_back(std::move(row));
  }
  if (j.contains("l_prime")) {
    if (!j.at("l_prime").is_number_unsigned())
      throw std::invalid_argument("chain.l_prime: expected a non-negative integer");
    chain.l_prime = j.at("l_prime").get<std::size_t>();
  }
  if (j.contains("complement_vars")) {
    if (!j.at("complement_vars").is_array())
      throw std::invalid_argument("chain.complement_vars: expected an array");
    chain.complement_vars = j.at("complement_vars").get<std::vector<VarIndex>>();
  }
  return chain;
}

} // namespace labkit
