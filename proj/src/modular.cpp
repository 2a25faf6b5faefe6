#include "labkit/modular.hpp"

#include <stdexcept>

namespace labkit::modular {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }
std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }

std::uint64_t power(std::uint64_t a, std::uint64_t e)
{
  std::uint64_t r = 1;
  a %= kPrime;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inverse(std::uint64_t a)
{
  if (a % kPrime == 0)
    throw std::domain_error("modular inverse of zero");
  return power(a, kPrime - 2);
}

namespace {

std::uint64_t reduce_integer(const mpz_class& z)
{
  mpz_class r = z % static_cast<unsigned long>(kPrime);
  if (r < 0)
    r += static_cast<unsigned long>(kPrime);
  return r.get_ui();
}

std::uint64_t reduce_rational(const mpq_class& q)
{
  std::uint64_t den = reduce_integer(q.get_den());
  if (den == 0)
    throw std::domain_error("denominator vanishes modulo the evaluation prime");
  return mul(reduce_integer(q.get_num()), inverse(den));
}

} // namespace

std::uint64_t reduce(const GaussScalar& c)
{
  std::uint64_t r = reduce_rational(c.re());
  if (!c.is_real())
    r = add(r, mul(kSqrtMinusOne, reduce_rational(c.im())));
  return r;
}

std::uint64_t evaluate(const Poly& f, std::span<const std::uint64_t> point)
{
  std::uint64_t total = 0;
  for (const auto& [m, c] : f.terms()) {
    std::uint64_t t = reduce(c);
    for (const auto& [v, e] : m.factors()) {
      if (v >= point.size())
        throw std::out_of_range("evaluate: point has too few coordinates");
      t = mul(t, power(point[v], e));
    }
    total = add(total, t);
  }
  return total;
}

std::size_t rank(std::vector<std::vector<std::uint64_t>> m)
{
  if (m.empty())
    return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[r]);
    std::uint64_t inv = inverse(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0)
        continue;
      std::uint64_t f = mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = sub(m[i][j], mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

std::vector<std::uint64_t> random_point(std::size_t n, std::mt19937_64& rng)
{
  std::uniform_int_distribution<std::uint64_t> dist(0, kPrime - 1);
  std::vector<std::uint64_t> pt(n);
  for (auto& x : pt)
    x = dist(rng);
  return pt;
}

} // namespace labkit::modular
