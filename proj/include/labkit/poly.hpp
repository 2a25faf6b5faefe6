#ifndef LABKIT_POLY_HPP
#define LABKIT_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labkit/scalar.hpp"

namespace labkit {

using VarIndex = std::uint32_t;

/// Commutative monomial x_{v1}^{e1} ... x_{vk}^{ek}, stored sparsely as
/// (variable, exponent) pairs sorted by variable with all exponents positive.
class Monomial
{
public:
  using Factor = std::pair<VarIndex, std::uint32_t>;

  Monomial() = default;
  /// Builds from arbitrary (var, exp) pairs; merges duplicates and drops zeros.
  explicit Monomial(std::vector<Factor> factors);

  static Monomial variable(VarIndex v, std::uint32_t exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(VarIndex v) const;
  bool is_one() const { return factors_.empty(); }
  /// Largest variable index plus one (0 for the unit monomial).
  std::size_t var_bound() const { return factors_.empty() ? 0 : factors_.back().first + 1; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// a / x_v, assuming the exponent of v is positive.
  Monomial lowered(VarIndex v) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::size_t hash() const;

private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with x0 > x1 > ...; returns true if a < b.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexDescending
{
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

struct MonomialHash
{
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse polynomial over the Gaussian rationals. Terms are kept in descending
/// graded-lex order and no zero coefficient is ever stored.
class Poly
{
public:
  using TermMap = std::map<Monomial, GaussScalar, GrlexDescending>;

  Poly() = default;
  Poly(const GaussScalar& c);
  Poly(long c) : Poly(GaussScalar(c)) {}

  static Poly variable(VarIndex v);
  static Poly term(const Monomial& m, const GaussScalar& c);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  GaussScalar constant_term() const;
  /// Highest total degree; nullopt for the zero polynomial.
  std::optional<std::uint32_t> degree() const;
  /// The zero polynomial counts as homogeneous.
  bool is_homogeneous() const;
  /// True if every coefficient has zero imaginary part.
  bool is_real() const;
  /// Largest variable index used plus one.
  std::size_t var_bound() const;
  /// Sorted list of variables occurring in some term.
  std::vector<VarIndex> support() const;

  void add_term(const Monomial& m, const GaussScalar& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussScalar& c);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussScalar& c) { return a *= c; }
  friend Poly operator*(const GaussScalar& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
  TermMap terms_;
};

/// Hash-based accumulator for sums of products; converts to canonical form once.
class PolyAccumulator
{
public:
  void add(const Poly& p, const GaussScalar& scale = GaussScalar(1));
  void add_term(const Monomial& m, const GaussScalar& c);
  void add_product(const Poly& a, const Poly& b, const GaussScalar& scale = GaussScalar(1));
  Poly take();

private:
  std::unordered_map<Monomial, GaussScalar, MonomialHash> acc_;
};

Poly pow(const Poly& p, std::uint32_t e);

/// Formal partial derivative with respect to x_var. Throws std::out_of_range if
/// var >= nvars.
Poly partial_derivative(const Poly& f, VarIndex var, std::size_t nvars);

/// Same as partial_derivative without a universe bound.
Poly derivative(const Poly& f, VarIndex var);

/// Linear substitution x_v -> images[v]. Each image must have total degree at
/// most 1 (std::invalid_argument otherwise); other variables are unchanged.
Poly substitute_linear(const Poly& f, const std::map<VarIndex, Poly>& images);

} // namespace labkit

#endif
