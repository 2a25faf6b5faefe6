#include "labkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "labkit/enveloping.hpp"
#include "labkit/labeling.hpp"
#include "labkit/lie_algebra.hpp"
#include "labkit/poly_io.hpp"
#include "labkit/sp6.hpp"

namespace labkit::cli {

namespace {

using nlohmann::json;

/// Raised for unusable input; maps to exit code 2.
struct InputError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Options
{
  std::string algebra;
  std::string chain;
  std::vector<std::string> f;
  std::string g;
  std::string p;
  std::string q;
  std::string gen;
  std::string dir = "sp6_artifacts";
  std::vector<std::string> vars;
  std::optional<std::uint64_t> seed;
  std::string output = "text";
  std::size_t oracle_budget = OracleBudget{}.max_total_degree;
};

class Runner
{
public:
  Runner(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  int dispatch(const std::string& command);

private:
  std::string slurp(const std::string& path, const char* what)
  {
    if (path == "-")
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    std::ifstream file(path);
    if (!file)
      throw InputError(std::string("cannot open ") + what + " file '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  }

  json read_json(const std::string& path, const char* what)
  {
    if (path.empty())
      throw InputError(std::string("missing --") + what);
    std::string text = slurp(path, what);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string(what) + " '" + path + "': malformed JSON at byte " +
                       std::to_string(e.byte) + ": " + e.what());
    }
  }

  const LieAlgebra& algebra()
  {
    if (!alg_)
      alg_ = algebra_from_json(read_json(o_.algebra, "algebra"));
    return *alg_;
  }

  const ReductionChain& chain()
  {
    if (!chain_) {
      const std::string base = o_.chain.substr(0, o_.chain.find_last_of('/') + 1);
      chain_ = chain_from_json(read_json(o_.chain, "chain"), [&](const std::string& rel) {
        return read_json(rel.starts_with('/') ? rel : base + rel, "algebra");
      });
    }
    return *chain_;
  }

  std::size_t nvars()
  {
    if (!o_.chain.empty())
      return chain().ambient.dim();
    return algebra().dim();
  }

  std::string text_arg(const std::string& v, const char* flag)
  {
    if (v.empty())
      throw InputError(std::string("missing --") + flag);
    if (v.starts_with('@'))
      return slurp(v.substr(1), flag);
    if (v == "-")
      return slurp(v, flag);
    return v;
  }

  Poly poly_arg(const std::string& v, const char* flag)
  {
    PolyParseOptions opt;
    opt.nvars = nvars();
    try {
      return parse_poly(text_arg(v, flag), opt);
    } catch (const ParseError& e) {
      throw InputError(std::string("--") + flag + ": parse error at position " +
                       std::to_string(e.position()) + ": " + e.what());
    }
  }

  NCPoly ncpoly_arg(const std::string& v, const char* flag)
  {
    const LieAlgebra& alg = algebra();
    try {
      return parse_ncpoly(text_arg(v, flag), alg.dim(), alg.generator_names());
    } catch (const ParseError& e) {
      throw InputError(std::string("--") + flag + ": parse error at position " +
                       std::to_string(e.position()) + ": " + e.what());
    }
  }

  Poly single_f()
  {
    if (o_.f.size() != 1)
      throw InputError("expected exactly one --f");
    return poly_arg(o_.f.front(), "f");
  }

  std::size_t generator_arg()
  {
    const LieAlgebra& alg = algebra();
    if (o_.gen.empty())
      throw InputError("missing --gen");
    const auto& names = alg.generator_names();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == o_.gen)
        return k;
    std::size_t pos = 0;
    std::size_t k = 0;
    try {
      k = std::stoul(o_.gen, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != o_.gen.size() || k >= alg.dim())
      throw InputError("--gen '" + o_.gen + "' is neither a generator name nor an index < " +
                       std::to_string(alg.dim()));
    return k;
  }

  RankOptions rank_options() const
  {
    RankOptions r;
    if (o_.seed)
      r.seed = *o_.seed;
    else if (const char* env = std::getenv("LABKIT_SEED"))
      r.seed = std::strtoull(env, nullptr, 10);
    return r;
  }

  int emit(const json& j, const std::string& text, int code = kOk)
  {
    if (o_.output == "json")
      out_ << j.dump(2) << "\n";
    else
      out_ << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return code;
  }

  int poly_result(const Poly& p) { return emit({{"result", format_poly(p)}}, format_poly(p)); }
  int ncpoly_result(const NCPoly& p) { return emit({{"result", format_ncpoly(p)}}, format_ncpoly(p)); }

  int cmd_validate();
  int cmd_rank(bool count);
  int cmd_apply_op();
  int cmd_is_invariant();
  int cmd_mlp_count();
  int cmd_scalar_check();
  int cmd_split();
  int cmd_independence();
  int cmd_certify();
  int cmd_sp6_verify();
  int cmd_sp6_export();

  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
  std::optional<LieAlgebra> alg_;
  std::optional<ReductionChain> chain_;
};

int Runner::cmd_validate()
{
  const LieAlgebra& alg = algebra();
  JacobiReport r = validate(alg);
  json failing = json::array();
  std::ostringstream text;
  for (const auto& t : r.failing_triples) {
    failing.push_back({t[0], t[1], t[2]});
    text << "Jacobi fails on (" << alg.generator_names()[t[0]] << ", "
         << alg.generator_names()[t[1]] << ", " << alg.generator_names()[t[2]] << ")\n";
  }
  text << (r.ok ? "ok" : "invalid") << ": " << r.triples_checked << " triples checked";
  return emit({{"ok", r.ok}, {"triples_checked", r.triples_checked}, {"failing_triples", failing}},
              text.str(), r.ok ? kOk : kCheckFailed);
}

int Runner::cmd_rank(bool count)
{
  const LieAlgebra& alg = algebra();
  RankOptions opt = rank_options();
  std::size_t rk = generic_adjoint_rank(alg, opt);
  std::size_t n = alg.dim() - rk;
  json j{{"dim", alg.dim()}, {"rank", rk}, {"invariant_count", n}, {"seed", opt.seed}};
  return emit(j, std::to_string(count ? n : rk));
}

int Runner::cmd_apply_op()
{
  std::size_t k = generator_arg();
  return poly_result(diffop_apply(algebra(), k, single_f()));
}

int Runner::cmd_is_invariant()
{
  const LieAlgebra& alg = algebra();
  Poly f = single_f();
  auto bad = first_non_annihilating(alg, f);
  if (!bad)
    return emit({{"invariant", true}}, "true");
  Poly image = diffop_apply(alg, *bad, f);
  return emit({{"invariant", false},
               {"generator", alg.generator_names()[*bad]},
               {"image", format_poly(image)}},
              "false: " + alg.generator_names()[*bad] + " maps f to " + format_poly(image),
              kCheckFailed);
}

int Runner::cmd_mlp_count()
{
  MlpReport r = mlp_count(chain(), rank_options());
  std::ostringstream text;
  text << "dim g = " << r.dim_g << ", N(g) = " << r.N_g << ", dim h = " << r.dim_h
       << ", N(h) = " << r.N_h << ", l' = " << r.l_prime << "\n"
       << "n = " << r.n_missing << ", m = " << r.m_available << "\n"
       << "subgroup scalars: " << r.n_subgroup_scalars << " (from labels: "
       << r.n_subgroup_scalars_from_labels << ")" << (r.consistent ? "" : " INCONSISTENT");
  return emit(mlp_report_to_json(r), text.str(), r.consistent ? kOk : kCheckFailed);
}

int Runner::cmd_scalar_check()
{
  const ReductionChain& c = chain();
  Poly f = single_f();
  auto row = first_failing_row(c, f);
  if (!row)
    return emit({{"subgroup_scalar", true}}, "true");
  Poly image = diffop_apply(c.ambient, c.sub_rows[*row], f);
  return emit({{"subgroup_scalar", false}, {"row", *row}, {"image", format_poly(image)}},
              "false: subalgebra row " + std::to_string(*row) + " maps f to " + format_poly(image),
              kCheckFailed);
}

int Runner::cmd_split()
{
  std::vector<VarIndex> comp;
  if (!o_.vars.empty()) {
    std::size_t n = nvars();
    for (const std::string& v : o_.vars) {
      std::size_t pos = 0;
      unsigned long k = 0;
      try {
        k = std::stoul(v, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != v.size() || k >= n)
        throw InputError("--vars entry '" + v + "' is not a variable index < " + std::to_string(n));
      comp.push_back(static_cast<VarIndex>(k));
    }
  } else {
    if (o_.chain.empty())
      throw InputError("split needs --chain with complement_vars or --vars");
    if (!chain().complement_vars)
      throw InputError("chain has no complement_vars; pass --vars");
    comp = *chain().complement_vars;
  }
  Poly f = single_f();
  json parts = json::array();
  std::ostringstream text;
  for (const auto& [deg, c] : grading_split(f, comp)) {
    parts.push_back({{"complement_degree", deg},
                     {"remaining_degree", c.remaining_degree},
                     {"terms", c.poly.size()},
                     {"poly", format_poly(c.poly)}});
    text << "[" << deg << "," << c.remaining_degree << "] " << format_poly(c.poly) << "\n";
  }
  return emit({{"components", parts}}, text.str());
}

int Runner::cmd_independence()
{
  if (o_.f.empty())
    throw InputError("independence needs one or more --f");
  std::vector<Poly> polys;
  for (const std::string& s : o_.f)
    polys.push_back(poly_arg(s, "f"));
  RankOptions opt = rank_options();
  std::size_t r = functional_independence(polys, nvars(), opt);
  bool ok = r == polys.size();
  return emit({{"rank", r}, {"count", polys.size()}, {"independent", ok}, {"seed", opt.seed}},
              std::string(ok ? "independent" : "dependent") + ": rank " + std::to_string(r) +
                " of " + std::to_string(polys.size()),
              ok ? kOk : kCheckFailed);
}

int Runner::cmd_certify()
{
  OracleBudget budget;
  budget.max_total_degree = o_.oracle_budget;
  Poly f = single_f();
  Poly g = poly_arg(o_.g, "g");
  CommutativityCertificate c = certify_commuting(algebra(), f, g, budget);
  json j = certificate_to_json(c);
  std::ostringstream text;
  text << to_string(c.verdict) << "\n"
       << "non-factorizable: " << to_string(c.nonfactorizable) << "\n"
       << "bracket vanishes: " << (c.bracket_vanishes ? "yes" : "no");
  if (c.oracle_used)
    text << "\noracle commutator zero: " << (c.oracle_zero.value_or(false) ? "yes" : "no");
  return emit(j, text.str(), c.verdict == Verdict::CertifiedCommuting ? kOk : kCheckFailed);
}

int Runner::cmd_sp6_verify()
{
  sp6::VerifyReport r = sp6::verify_all(rank_options().seed);
  if (o_.output == "json")
    out_ << r.to_json().dump(2) << "\n";
  else
    out_ << r.summary();
  return r.ok ? kOk : kCheckFailed;
}

int Runner::cmd_sp6_export()
{
  auto files = sp6::export_artifacts(sp6::build_artifacts(), o_.dir);
  std::string text;
  for (const auto& f : files)
    text += f + "\n";
  return emit({{"files", files}}, text);
}

int Runner::dispatch(const std::string& command)
{
  if (command == "validate")
    return cmd_validate();
  if (command == "rank")
    return cmd_rank(false);
  if (command == "invariant-count")
    return cmd_rank(true);
  if (command == "apply-op")
    return cmd_apply_op();
  if (command == "is-invariant")
    return cmd_is_invariant();
  if (command == "berezin")
    return poly_result(berezin_bracket(algebra(), single_f(), poly_arg(o_.g, "g")));
  if (command == "symmetrize")
    return ncpoly_result(symmetrize(algebra(), single_f()));
  if (command == "normal-order")
    return ncpoly_result(normal_order(algebra(), ncpoly_arg(o_.p, "p")));
  if (command == "commutator")
    return ncpoly_result(nc_commutator(algebra(), ncpoly_arg(o_.p, "p"), ncpoly_arg(o_.q, "q")));
  if (command == "project")
    return poly_result(labkit::project(ncpoly_arg(o_.p, "p")));
  if (command == "mlp-count")
    return cmd_mlp_count();
  if (command == "scalar-check")
    return cmd_scalar_check();
  if (command == "split")
    return cmd_split();
  if (command == "independence")
    return cmd_independence();
  if (command == "certify")
    return cmd_certify();
  if (command == "sp6 verify")
    return cmd_sp6_verify();
  if (command == "sp6 export")
    return cmd_sp6_export();
  throw InputError("unknown command '" + command + "'");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err)
{
  Options o;
  CLI::App app{"Exact toolkit for Lie-Poisson brackets, enveloping algebras and missing labels",
               "labkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed for randomized rank checks (default: LABKIT_SEED or 0)");
    sub->add_option("--output", o.output, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  };
  auto with_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra", o.algebra, "Algebra JSON file ('-' for stdin)")->required();
  };
  auto with_f = [&](CLI::App* sub) {
    sub->add_option("--f", o.f, "Polynomial text, @file or '-'")->required()->expected(1);
  };
  auto with_g = [&](CLI::App* sub) {
    sub->add_option("--g", o.g, "Polynomial text, @file or '-'")->required();
  };

  struct Spec
  {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> specs{
    {"validate", "Check antisymmetry and the Jacobi identity"},
    {"rank", "Generic rank of the adjoint matrix"},
    {"invariant-count", "Number of functionally independent invariants"},
    {"apply-op", "Apply the differential operator of one generator"},
    {"is-invariant", "Check that every generator operator annihilates f"},
    {"berezin", "Lie-Poisson bracket {f, g}"},
    {"symmetrize", "Symmetrized element of the enveloping algebra"},
    {"normal-order", "PBW normal form of a noncommutative polynomial"},
    {"commutator", "Normal-ordered commutator [p, q]"},
    {"project", "Commutative image of a noncommutative polynomial"},
    {"mlp-count", "Missing-label counts for a chain"},
    {"scalar-check", "Check that f is a subgroup scalar"},
    {"split", "Grading split by complement degree"},
    {"independence", "Jacobian rank of several polynomials"},
    {"certify", "Commutativity certificate for symmetrized f and g"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    subs[s.name] = sub;
  }
  for (const char* n : {"validate", "rank", "invariant-count", "apply-op", "is-invariant", "berezin",
                        "symmetrize", "normal-order", "commutator", "project", "certify"})
    with_algebra(subs[n]);
  for (const char* n : {"apply-op", "is-invariant", "berezin", "symmetrize", "scalar-check", "split",
                        "certify"})
    with_f(subs[n]);
  for (const char* n : {"berezin", "certify"})
    with_g(subs[n]);
  subs["apply-op"]->add_option("--gen", o.gen, "Generator name or index")->required();
  for (const char* n : {"normal-order", "commutator", "project"})
    subs[n]->add_option("--p", o.p, "Noncommutative polynomial, @file or '-'")->required();
  subs["commutator"]->add_option("--q", o.q, "Noncommutative polynomial, @file or '-'")->required();
  for (const char* n : {"mlp-count", "scalar-check"})
    subs[n]->add_option("--chain", o.chain, "Chain JSON file")->required();
  subs["split"]->add_option("--chain", o.chain, "Chain JSON file");
  subs["split"]->add_option("--algebra", o.algebra, "Algebra JSON file (with --vars)");
  subs["split"]->add_option("--vars", o.vars, "Complement variable indices");
  subs["independence"]->add_option("--algebra", o.algebra, "Algebra JSON file");
  subs["independence"]->add_option("--chain", o.chain, "Chain JSON file");
  subs["independence"]->add_option("--f", o.f, "Polynomial (repeatable)")->required();
  subs["certify"]->add_option("--oracle-budget", o.oracle_budget,
                              "Largest total degree for the enveloping-algebra fallback");

  CLI::App* sp6cmd = app.add_subcommand("sp6", "sp(6) > su(3) x u(1) reproduction pipeline");
  sp6cmd->require_subcommand(1);
  CLI::App* verify = sp6cmd->add_subcommand("verify", "Run every check and print the report");
  common(verify);
  CLI::App* exp = sp6cmd->add_subcommand("export", "Write all artifacts to a directory");
  common(exp);
  exp->add_option("--dir", o.dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::string command;
  for (CLI::App* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (CLI::App* inner : sub->get_subcommands())
      command += " " + inner->get_name();
  }

  Runner runner(o, in, out);
  try {
    return runner.dispatch(command);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: parse error at position " << e.position() << ": " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

} // namespace labkit::cli
