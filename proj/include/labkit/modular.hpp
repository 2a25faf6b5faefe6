#ifndef LABKIT_MODULAR_HPP
#define LABKIT_MODULAR_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "labkit/poly.hpp"

namespace labkit::modular {

/// Prime p = 2147483693 (> 2^31, p = 1 mod 4) so that Q(i) maps into F_p via
/// i -> sqrt(-1). Residues fit in 32 bits, products in 64.
inline constexpr std::uint64_t kPrime = 2147483693ull;
inline constexpr std::uint64_t kSqrtMinusOne = 72742850ull;

std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t add(std::uint64_t a, std::uint64_t b);
std::uint64_t sub(std::uint64_t a, std::uint64_t b);
std::uint64_t power(std::uint64_t a, std::uint64_t e);
std::uint64_t inverse(std::uint64_t a);

/// Image of an exact scalar; throws std::domain_error if a denominator
/// vanishes mod p.
std::uint64_t reduce(const GaussScalar& c);

std::uint64_t evaluate(const Poly& f, std::span<const std::uint64_t> point);

std::size_t rank(std::vector<std::vector<std::uint64_t>> m);

std::vector<std::uint64_t> random_point(std::size_t n, std::mt19937_64& rng);

} // namespace labkit::modular

#endif
