#ifndef LABKIT_TEST_SUPPORT_HPP
#define LABKIT_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "labkit/poly.hpp"
#include "labkit/scalar.hpp"

namespace labkit::test {

inline Poly x(VarIndex v) { return Poly::variable(v); }

inline GaussScalar small_rational(std::mt19937_64& rng)
{
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  long n = num(rng);
  if (n == 0)
    n = 1;
  return GaussScalar(n, den(rng));
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, std::uint32_t degree)
{
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  std::vector<Monomial::Factor> factors;
  for (std::uint32_t k = 0; k < degree; ++k)
    factors.emplace_back(static_cast<VarIndex>(var(rng)), 1);
  return Monomial(std::move(factors));
}

/// Homogeneous of the given degree with up to `terms` terms; may be zero only
/// if every drawn monomial cancels, which small rationals make unlikely.
inline Poly random_homogeneous(std::mt19937_64& rng, std::size_t nvars, std::uint32_t degree,
                               std::size_t terms)
{
  Poly f;
  while (f.is_zero())
    for (std::size_t t = 0; t < terms; ++t)
      f.add_term(random_monomial(rng, nvars, degree), small_rational(rng));
  return f;
}

/// Mixed degrees 0..max_degree.
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, std::uint32_t max_degree,
                        std::size_t terms)
{
  std::uniform_int_distribution<std::uint32_t> deg(0, max_degree);
  Poly f;
  for (std::size_t t = 0; t < terms; ++t)
    f.add_term(random_monomial(rng, nvars, deg(rng)), small_rational(rng));
  return f;
}

} // namespace labkit::test

#endif
