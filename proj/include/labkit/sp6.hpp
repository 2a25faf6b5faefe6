#ifndef LABKIT_SP6_HPP
#define LABKIT_SP6_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "labkit/labeling.hpp"
#include "labkit/lie_algebra.hpp"
#include "labkit/representation.hpp"

namespace labkit::sp6 {

/// Index scheme of sp(6,R) in the Racah realization: generators X(i,j),
/// -3 <= i,j <= 3, i,j != 0, subject to X(i,j) + e_i e_j X(-j,-i) = 0 with
/// e_i = sgn(i). Canonical representatives, in index order:
///   0..8   X(i,j)  with 1 <= i,j <= 3      (unitary block)
///   9..14  X(i,-j) with 1 <= i <= j <= 3
///   15..20 X(-i,j) with 1 <= i <= j <= 3
class Sp6Basis
{
public:
  Sp6Basis();

  static constexpr std::size_t kDim = 21;

  const std::vector<std::pair<int, int>>& generators() const { return generators_; }
  /// Canonical generator index and the sign s with X(i,j) = s * X_index.
  /// Throws std::out_of_range for |i| or |j| outside 1..3.
  std::pair<std::size_t, int> resolve(int i, int j) const;
  std::size_t index(int i, int j) const;

  const std::vector<std::size_t>& unitary_block() const { return unitary_; }
  const std::vector<std::size_t>& complement_block() const { return complement_; }
  /// Indices of X(1,1), X(2,2), X(3,3).
  std::array<std::size_t, 3> diagonal() const;

  std::vector<std::string> names() const;

private:
  std::vector<std::pair<int, int>> generators_;
  std::vector<std::size_t> unitary_;
  std::vector<std::size_t> complement_;
};

/// Evaluates the Racah bracket on all canonical pairs. Throws std::logic_error
/// if two raw representatives of the same pair give different results.
std::pair<LieAlgebra, Sp6Basis> build_sp6();

/// How the block matrix of the Casimir construction is laid out:
///   [ U           a x(-i,j) ]
///   [ b x(i,-j)  -x(i,j)    ]
/// U holds x(i,j) at row i, column j unless `transpose_unitary_block`; a = i,
/// and b = i, or -i when `conjugate_lower_phase`.
struct MatrixConvention
{
  bool transpose_unitary_block = false;
  bool conjugate_lower_phase = false;

  std::string describe() const;
  friend bool operator==(const MatrixConvention&, const MatrixConvention&) = default;
};

/// Conventions tried, in order; the first is the block matrix as printed.
std::vector<MatrixConvention> candidate_conventions();

PolyMatrix build_m_matrix(const Sp6Basis& basis, const MatrixConvention& convention);

struct CasimirResult
{
  Poly C2, C4, C6;
  /// All coefficients of det(M - T Id), increasing powers of T.
  std::vector<Poly> coefficients;
  MatrixConvention convention;
  /// Conventions rejected by the invariance gate, with the reason.
  std::vector<std::pair<MatrixConvention, std::string>> rejected;
};

/// Characteristic-polynomial invariants. The first convention whose odd
/// coefficients vanish, whose coefficients are real and whose even
/// coefficients are annihilated by all 21 operators is accepted.
CasimirResult build_m_and_casimirs(const LieAlgebra& alg, const Sp6Basis& basis);

/// sp(6) > su(3) x u(1): the six off-diagonal unitary generators plus
/// H1 = X11 - X22, H2 = X22 - X33, H3 = X11 + X22 + X33; l' = 0.
ReductionChain build_chain(const LieAlgebra& alg, const Sp6Basis& basis);

/// Basis change replacing X11, X22, X33 by H1, H2, H3 (rows over the X basis).
ScalarMatrix h_basis_rows(const Sp6Basis& basis);

struct ChainArtifacts
{
  LieAlgebra algebra;
  Sp6Basis basis;
  CasimirResult casimirs;
  ReductionChain chain;

  /// Algebra in the su(3) x u(1) adapted basis and the corresponding chain
  /// (unit rows, complement variables set).
  LieAlgebra adapted;
  ReductionChain adapted_chain;
  /// Casimirs with x(i,i) replaced by combinations of h1, h2, h3.
  Poly hC2, hC4, hC6;

  std::map<std::size_t, GradedComponent> C4_split, C6_split;
  Poly C22, C42, C24;

  /// su(3) quadratic and cubic invariants, and the u(1) generator h3.
  Poly c2, c3, h3;
};

struct Labels
{
  Poly C22, C42, C24;
};

struct SubCasimirs
{
  Poly c2, c3, h3;
};

/// Grading split of the h-basis C4 and C6 over the 12 complement variables.
/// Throws std::runtime_error on any odd complement degree.
Labels extract_labels(ChainArtifacts& artifacts);
SubCasimirs sub_casimirs(const ChainArtifacts& artifacts);

/// Runs every construction step and fills all fields.
ChainArtifacts build_artifacts();

struct Check
{
  std::string name;
  bool passed = false;
  nlohmann::json detail;
};

struct VerifyReport
{
  std::vector<Check> checks;
  bool ok = true;
  nlohmann::json term_counts;
  MatrixConvention convention;
  /// Wall-clock milliseconds per stage; kept out of the JSON report.
  std::vector<std::pair<std::string, double>> timings;

  nlohmann::json to_json() const;
  std::string summary() const;
};

/// 6 x 6 matrices of the canonical generators: X(i,j) -> E(i,j) - e_i e_j E(-j,-i),
/// rows and columns ordered 1, 2, 3, -1, -2, -3.
std::vector<ScalarMatrix> defining_matrices(const Sp6Basis& basis);

/// adjoint (x) adjoint (x) defining representation (2646-dimensional) of the
/// adapted algebra. Unlike the defining and adjoint representations it has
/// su(3) x u(1) multiplicities, so commutators of subgroup scalars can be
/// detected in it.
ModularRepresentation witness_representation(const ChainArtifacts& artifacts);

/// Reported term counts of C(2,2), C(2,4), C(4,2) in the reference text.
inline constexpr std::array<std::size_t, 3> kReferenceTermCounts{126, 686, 444};

VerifyReport verify_all(std::uint64_t seed);

/// Writes the algebra, chain and every polynomial artifact into `directory`.
/// Returns the list of files written.
std::vector<std::string> export_artifacts(const ChainArtifacts& artifacts,
                                          const std::string& directory);

} // namespace labkit::sp6

#endif
