#ifndef LABKIT_ENVELOPING_HPP
#define LABKIT_ENVELOPING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "labkit/lie_algebra.hpp"
#include "labkit/poly.hpp"

namespace labkit {

/// Product of generators X_{w[0]} X_{w[1]} ...; the empty word is 1.
using Word = std::vector<std::uint32_t>;

bool is_pbw_normal(const Word& w);

/// Longer words first, then lexicographic.
struct WordOrder
{
  bool operator()(const Word& a, const Word& b) const
  {
    if (a.size() != b.size())
      return a.size() > b.size();
    return a < b;
  }
};

struct WordHash
{
  std::size_t operator()(const Word& w) const;
};

/// Element of the free associative algebra on the generators, read in U(g).
/// `normalized()` is true when every stored word is PBW-normal (non-decreasing),
/// in which case the representation is unique.
class NCPoly
{
public:
  using TermMap = std::map<Word, GaussScalar, WordOrder>;

  NCPoly() = default;
  NCPoly(const GaussScalar& c);

  static NCPoly word(Word w, const GaussScalar& c = GaussScalar(1));
  static NCPoly generator(std::uint32_t g) { return word({g}); }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool normalized() const;

  void add_term(const Word& w, const GaussScalar& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const GaussScalar& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const GaussScalar& c) { return a *= c; }
  NCPoly operator-() const;

  /// Concatenation product in the free algebra (no reordering).
  friend NCPoly concat(const NCPoly& a, const NCPoly& b);

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

private:
  TermMap terms_;
};

/// Rewrites words into the PBW basis using X_j X_i = X_i X_j + [X_j, X_i]
/// (j > i). Results for words and for (letter, normal word) insertions are
/// memoized; one instance is meant for one thread.
class PbwNormalizer
{
public:
  explicit PbwNormalizer(const LieAlgebra& alg);

  const LieAlgebra& algebra() const { return alg_; }

  NCPoly normalize(const NCPoly& p);
  const NCPoly& normalize_word(const Word& w);

  NCPoly multiply(const NCPoly& a, const NCPoly& b);
  NCPoly commutator(const NCPoly& a, const NCPoly& b);
  NCPoly symmetrize(const Poly& f);

  std::size_t memo_size() const { return words_.size() + inserts_.size(); }

private:
  /// X_letter * (normal word)
  const NCPoly& insert(std::uint32_t letter, const Word& normal);
  NCPoly insert(std::uint32_t letter, const NCPoly& normal);

  const LieAlgebra& alg_;
  std::unordered_map<Word, NCPoly, WordHash> words_;
  std::unordered_map<Word, NCPoly, WordHash> inserts_; // key: letter followed by the word
};

NCPoly normal_order(const LieAlgebra& alg, const NCPoly& p);
NCPoly nc_mul(const LieAlgebra& alg, const NCPoly& a, const NCPoly& b);
NCPoly nc_commutator(const LieAlgebra& alg, const NCPoly& a, const NCPoly& b);

/// Symmetrization: each monomial maps to the average of its distinct
/// orderings; the result is PBW-normal.
NCPoly symmetrize(const LieAlgebra& alg, const Poly& f);

/// Replaces each generator X_i by x_i.
Poly project(const NCPoly& p);

/// Longest word length; nullopt for the zero element.
std::optional<std::size_t> filtration_degree(const NCPoly& p);

/// Commutative image of the length-d words only.
Poly leading_symbol(const NCPoly& p, std::size_t d);

// --- factorizability --------------------------------------------------------

enum class Factorizability { NonFactorizable, PossiblyFactorizable };

struct FactorizationWitness
{
  Monomial left;    // monomial of f
  Monomial right;   // monomial of g
  Monomial shared;  // common factor pulled out of both
};

struct FactorizabilityResult
{
  Factorizability status = Factorizability::NonFactorizable;
  std::optional<FactorizationWitness> witness;
  std::size_t pairs_examined = 0;
};

/// Conservative check over all monomial pairs (m1 of f, m2 of g): a pair is
/// flagged when some nonempty common factor S (taken with the minimum of the
/// two exponents on its support) has every generator of S commuting with every
/// generator of both residual factors, and the residual factors commute
/// generator-wise. Requires f and g nonzero.
FactorizabilityResult certify_nonfactorizable(const LieAlgebra& alg, const Poly& f, const Poly& g);

std::string to_string(Factorizability f);

// --- text format ------------------------------------------------------------

/// Terms "coeff*X<k> X<k> ..." in the normalized word order; letters may be
/// separated by spaces or '*'. Generator names of the algebra are accepted in
/// place of X<k>; a name spelled like X<k> still means index k.
NCPoly parse_ncpoly(std::string_view text, std::size_t dim,
                    const std::vector<std::string>& names = {});
std::string format_ncpoly(const NCPoly& p);

} // namespace labkit

#endif
