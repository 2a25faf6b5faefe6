#ifndef LABKIT_LIE_ALGEBRA_HPP
#define LABKIT_LIE_ALGEBRA_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "labkit/charpoly.hpp"
#include "labkit/linalg.hpp"
#include "labkit/poly.hpp"

namespace labkit {

struct BracketTerm
{
  std::size_t k;
  GaussScalar c;

  friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

using BracketExpansion = std::vector<BracketTerm>;

/// Finite-dimensional Lie algebra given by structure constants
/// [X_i, X_j] = sum_k C_ij^k X_k. Only i < j is stored; [X_j, X_i] is the
/// negative and [X_i, X_i] = 0.
class LieAlgebra
{
public:
  LieAlgebra() = default;
  LieAlgebra(std::string name, std::vector<std::string> generator_names);
  /// Generators named X0..X{dim-1}.
  LieAlgebra(std::string name, std::size_t dim);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }

  /// Sets [X_i, X_j]; i > j stores the negated expansion under (j, i).
  /// Throws std::out_of_range for bad indices and std::invalid_argument for i == j.
  void set_bracket(std::size_t i, std::size_t j, BracketExpansion terms);

  /// [X_i, X_j] with zero coefficients removed and k sorted.
  BracketExpansion bracket(std::size_t i, std::size_t j) const;
  bool commutes(std::size_t i, std::size_t j) const;

  /// Nonzero brackets keyed by (i, j), i < j.
  const std::map<std::pair<std::size_t, std::size_t>, BracketExpansion>& brackets() const
  {
    return brackets_;
  }

  /// [u, v] for coefficient vectors over the basis.
  ScalarVector bracket(const ScalarVector& u, const ScalarVector& v) const;

private:
  std::string name_;
  std::vector<std::string> names_;
  std::map<std::pair<std::size_t, std::size_t>, BracketExpansion> brackets_;
};

struct JacobiReport
{
  bool ok = true;
  /// 0-based (i, j, k), i < j < k, whose cyclic Jacobi sum is nonzero.
  std::vector<std::array<std::size_t, 3>> failing_triples;
  std::size_t triples_checked = 0;
};

JacobiReport validate(const LieAlgebra& alg);

/// n x n matrix with entry (i, j) = C_ij^k x_k.
PolyMatrix adjoint_matrix(const LieAlgebra& alg);

struct RankOptions
{
  std::uint64_t seed = 0;
  /// Independent prime-field points; the maximum rank is kept.
  std::size_t samples = 3;
  /// Also evaluate once at a small random integer point over Q(i) exactly.
  bool exact_cross_check = true;
};

/// Generic rank of the adjoint matrix.
std::size_t generic_adjoint_rank(const LieAlgebra& alg, const RankOptions& options = {});

/// N(g) = dim g - generic rank of (C_ij^k x_k).
std::size_t invariant_count(const LieAlgebra& alg, const RankOptions& options = {});

/// Applies sum_i coeffs[i] * Xhat_i with Xhat_i = C_ij^k x_k d/dx_j.
/// Throws std::invalid_argument if coeffs.size() != dim.
Poly diffop_apply(const LieAlgebra& alg, const ScalarVector& coeffs, const Poly& f);

/// Xhat_i applied to f.
Poly diffop_apply(const LieAlgebra& alg, std::size_t generator, const Poly& f);

/// Index of the first generator whose operator does not annihilate f, if any.
std::optional<std::size_t> first_non_annihilating(const LieAlgebra& alg, const Poly& f);

bool is_invariant(const LieAlgebra& alg, const Poly& f);

/// Lie-Poisson bracket normalized by pb(x_i, x_j) = C_ij^k x_k, i.e.
/// pb(f, g) = sum_{i,j} C_ij^k x_k (df/dx_i)(dg/dx_j). Opposite in sign to the
/// bracket with the leading minus; vanishing is unaffected.
Poly berezin_bracket(const LieAlgebra& alg, const Poly& f, const Poly& g);

/// Same algebra in the basis Y_a = sum_b rows[a][b] X_b (rows must be invertible).
LieAlgebra change_basis(const LieAlgebra& alg, const ScalarMatrix& rows,
                        std::vector<std::string> new_names = {});

/// Substitution x_b -> sum_a (rows^{-1})_{ba} y_a expressing the old dual
/// coordinates through the coordinates dual to Y_a = sum_b rows[a][b] X_b.
/// Variables whose image would be x_b itself are omitted.
std::map<VarIndex, Poly> dual_substitution(const ScalarMatrix& rows);

/// Structure constants of the matrix Lie algebra spanned by `basis` under the
/// commutator. Throws std::invalid_argument if the span is not closed.
LieAlgebra lie_algebra_from_matrices(std::string name, std::vector<std::string> names,
                                     const std::vector<ScalarMatrix>& basis);

/// so(3) with [X0,X1]=X2, [X1,X2]=X0, [X2,X0]=X1.
LieAlgebra make_so3();
/// Heisenberg algebra [X0,X1]=X2.
LieAlgebra make_heisenberg();
/// alg (+) an abelian ideal of `extra` central generators appended at the end.
LieAlgebra with_central_extension(const LieAlgebra& alg, std::size_t extra);
/// su(3) in the basis E01,E02,E10,E12,E20,E21,E00-E11,E11-E22 (traceless 3x3).
LieAlgebra make_su3();

nlohmann::json algebra_to_json(const LieAlgebra& alg);
/// Throws std::invalid_argument (with a field path) or ParseError.
LieAlgebra algebra_from_json(const nlohmann::json& j);

} // namespace labkit

#endif
