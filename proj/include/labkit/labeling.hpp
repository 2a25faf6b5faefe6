#ifndef LABKIT_LABELING_HPP
#define LABKIT_LABELING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "labkit/enveloping.hpp"
#include "labkit/lie_algebra.hpp"
#include "labkit/representation.hpp"

namespace labkit {

/// Algebra-subalgebra chain g > h. Each row of `sub_rows` is a subalgebra
/// generator written over the ambient basis.
struct ReductionChain
{
  LieAlgebra ambient;
  ScalarMatrix sub_rows;
  /// Number of ambient invariants depending only on subalgebra variables;
  /// supplied by the caller.
  std::size_t l_prime = 0;
  /// Ambient coordinates spanning the complement, for the contraction grading.
  std::optional<std::vector<VarIndex>> complement_vars;
};

enum class ChainProblem { None, BadRowLength, DependentRows, NotClosed, BadComplement };

struct ChainValidation
{
  bool ok = false;
  ChainProblem problem = ChainProblem::None;
  std::string message;
  /// Row indices (a, b) whose bracket leaves the span, for NotClosed.
  std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
  /// Structure constants of the subalgebra in the basis given by the rows.
  std::optional<LieAlgebra> subalgebra;
};

ChainValidation validate_chain(const ReductionChain& chain);

struct MlpReport
{
  std::size_t dim_g = 0;
  std::size_t dim_h = 0;
  std::size_t N_g = 0;
  std::size_t N_h = 0;
  std::size_t l_prime = 0;
  std::size_t n_missing = 0;
  std::size_t m_available = 0;
  /// Solutions of the subalgebra part of the invariant system.
  std::size_t n_subgroup_scalars = 0;
  /// The same count as m + N(g) + N(h) - l'.
  long n_subgroup_scalars_from_labels = 0;
  bool consistent = false;
};

/// Missing-label counts. Throws std::invalid_argument for an invalid chain or
/// when dim g - N(g) - dim h - N(h) is odd.
MlpReport mlp_count(const ReductionChain& chain, const RankOptions& options = {});

/// True iff every subalgebra operator annihilates f.
bool is_subgroup_scalar(const ReductionChain& chain, const Poly& f);
/// Index of the first subalgebra row whose operator does not annihilate f.
std::optional<std::size_t> first_failing_row(const ReductionChain& chain, const Poly& f);

/// Helper for l': true iff f involves only variables outside the complement.
/// Only meaningful for sub-basis (coordinate) embeddings.
bool depends_only_on_subalgebra(const ReductionChain& chain, const Poly& f);

struct GradedComponent
{
  std::size_t complement_degree = 0;
  /// deg f - complement degree; the second bidegree entry for homogeneous f.
  std::size_t remaining_degree = 0;
  Poly poly;
};

/// Splits f by total degree in the complement variables.
std::map<std::size_t, GradedComponent> grading_split(const Poly& f,
                                                     const std::vector<VarIndex>& complement_vars);

/// Rank of the Jacobian (df_i/dx_j) at random prime-field points (max over
/// samples). The polynomials are independent iff the rank equals their number.
std::size_t functional_independence(const std::vector<Poly>& polys, std::size_t n_vars,
                                    const RankOptions& options = {});

enum class Verdict { CertifiedCommuting, CertifiedNonCommuting, Inconclusive };

/// Third state for pairs where factorizability is not defined (a zero input).
enum class FactorizabilityState { NonFactorizable, PossiblyFactorizable, NotApplicable };

struct OracleBudget
{
  std::size_t max_total_degree = 8;
  std::size_t max_dim = 6;
};

struct CommutativityCertificate
{
  std::string pair_id;
  FactorizabilityState nonfactorizable = FactorizabilityState::NotApplicable;
  std::optional<FactorizationWitness> witness;
  bool bracket_vanishes = false;
  Verdict verdict = Verdict::Inconclusive;
  bool oracle_used = false;
  /// Commutator of the symmetrizations vanished; set only when oracle_used.
  std::optional<bool> oracle_zero;
  /// Nonzero image of the commutator in a representation, when one was found.
  std::optional<RepresentationWitness> representation_witness;
};

/// Commutativity of Lambda(f), Lambda(g) from the Berezin bracket for
/// non-factorizable pairs, with the enveloping-algebra commutator as a fallback
/// within the budget. Pairs still undecided are evaluated in `witness_rep`, if
/// given; a nonzero image certifies non-commutation. f and g must be
/// homogeneous (std::invalid_argument).
CommutativityCertificate certify_commuting(const LieAlgebra& alg, const Poly& f, const Poly& g,
                                           const OracleBudget& budget = {},
                                           std::string pair_id = "f,g",
                                           const ModularRepresentation* witness_rep = nullptr);

std::string to_string(Verdict v);
std::string to_string(FactorizabilityState s);

nlohmann::json certificate_to_json(const CommutativityCertificate& c);
nlohmann::json mlp_report_to_json(const MlpReport& r);

nlohmann::json chain_to_json(const ReductionChain& chain);
/// "algebra" may be an inline object or, if `load_algebra_file` is given, a
/// string path passed to it.
ReductionChain chain_from_json(const nlohmann::json& j,
                               const std::function<nlohmann::json(const std::string&)>&
                                 load_algebra_file = nullptr);

} // namespace labkit

#endif
