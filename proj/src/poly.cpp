#include "labkit/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace labkit {

Monomial::Monomial(std::vector<Factor> factors)
{
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0)
      continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(v, e);
    degree_ += e;
  }
}

Monomial Monomial::variable(VarIndex v, std::uint32_t exp)
{
  Monomial m;
  if (exp > 0) {
    m.factors_.emplace_back(v, exp);
    m.degree_ = exp;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarIndex v) const
{
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first == j->first) {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    } else if (i->first < j->first) {
      r.factors_.push_back(*i++);
    } else {
      r.factors_.push_back(*j++);
    }
  }
  r.factors_.insert(r.factors_.end(), i, a.factors_.end());
  r.factors_.insert(r.factors_.end(), j, b.factors_.end());
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial Monomial::lowered(VarIndex v) const
{
  Monomial r = *this;
  auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), Factor{v, 0});
  if (it == r.factors_.end() || it->first != v)
    throw std::logic_error("Monomial::lowered: variable not present");
  if (--it->second == 0)
    r.factors_.erase(it);
  --r.degree_;
  return r;
}

std::size_t Monomial::hash() const
{
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& [v, e] : factors_) {
    h ^= (static_cast<std::size_t>(v) << 20) ^ e;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool grlex_less(const Monomial& a, const Monomial& b)
{
  if (a.degree() != b.degree())
    return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second)
        return fa[i].second < fb[j].second;
      ++i;
      ++j;
    } else {
      // the monomial holding the smaller variable index is the larger one
      return fb[j].first < fa[i].first;
    }
  }
  return i == fa.size() && j < fb.size();
}

// ---------------------------------------------------------------------------

Poly::Poly(const GaussScalar& c)
{
  if (!c.is_zero())
    terms_.emplace(Monomial(), c);
}

Poly Poly::variable(VarIndex v)
{
  return term(Monomial::variable(v), GaussScalar(1));
}

Poly Poly::term(const Monomial& m, const GaussScalar& c)
{
  Poly p;
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const
{
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussScalar Poly::constant_term() const
{
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? GaussScalar() : it->second;
}

std::optional<std::uint32_t> Poly::degree() const
{
  if (terms_.empty())
    return std::nullopt;
  return terms_.begin()->first.degree();
}

bool Poly::is_homogeneous() const
{
  if (terms_.empty())
    return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

bool Poly::is_real() const
{
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

std::size_t Poly::var_bound() const
{
  std::size_t b = 0;
  for (const auto& [m, c] : terms_)
    b = std::max(b, m.var_bound());
  return b;
}

std::vector<VarIndex> Poly::support() const
{
  std::vector<VarIndex> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void Poly::add_term(const Monomial& m, const GaussScalar& c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o)
{
  for (const auto& [m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
  for (const auto& [m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussScalar& c)
{
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_)
    v *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
  if (a.is_zero() || b.is_zero())
    return Poly();
  if (a.size() == 1 && a.terms_.begin()->first.is_one())
    return b * a.terms_.begin()->second;
  if (b.size() == 1 && b.terms_.begin()->first.is_one())
    return a * b.terms_.begin()->second;
  PolyAccumulator acc;
  acc.add_product(a, b);
  return acc.take();
}

Poly Poly::operator-() const
{
  Poly r = *this;
  for (auto& [m, c] : r.terms_)
    c = -c;
  return r;
}

// ---------------------------------------------------------------------------

void PolyAccumulator::add(const Poly& p, const GaussScalar& scale)
{
  for (const auto& [m, c] : p.terms())
    add_term(m, scale.is_one() ? c : c * scale);
}

void PolyAccumulator::add_term(const Monomial& m, const GaussScalar& c)
{
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted)
    it->second += c;
}

void PolyAccumulator::add_product(const Poly& a, const Poly& b, const GaussScalar& scale)
{
  if (acc_.empty())
    acc_.reserve(a.size() * b.size() / 2 + 16);
  const bool unit = scale.is_one();
  for (const auto& [ma, ca] : a.terms()) {
    GaussScalar sa = unit ? ca : ca * scale;
    for (const auto& [mb, cb] : b.terms()) {
      auto [it, inserted] = acc_.try_emplace(ma * mb);
      it->second.add_product(sa, cb);
    }
  }
}

Poly PolyAccumulator::take()
{
  Poly p;
  for (auto& [m, c] : acc_)
    p.add_term(m, c);
  acc_.clear();
  return p;
}

Poly pow(const Poly& p, std::uint32_t e)
{
  Poly result(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1u)
      result = result * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return result;
}

Poly derivative(const Poly& f, VarIndex var)
{
  Poly r;
  for (const auto& [m, c] : f.terms()) {
    std::uint32_t e = m.exponent(var);
    if (e == 0)
      continue;
    r.add_term(m.lowered(var), c * GaussScalar(static_cast<long>(e)));
  }
  return r;
}

Poly partial_derivative(const Poly& f, VarIndex var, std::size_t nvars)
{
  if (var >= nvars)
    throw std::out_of_range("partial_derivative: variable x" + std::to_string(var) +
                            " outside universe of size " + std::to_string(nvars));
  return derivative(f, var);
}

Poly substitute_linear(const Poly& f, const std::map<VarIndex, Poly>& images)
{
  for (const auto& [v, img] : images) {
    auto d = img.degree();
    if (d && *d > 1)
      throw std::invalid_argument("substitute_linear: image of x" + std::to_string(v) +
                                  " has degree " + std::to_string(*d));
  }
  // powers of images are shared between terms
  std::map<std::pair<VarIndex, std::uint32_t>, Poly> power_cache;
  auto image_power = [&](VarIndex v, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end())
      it = power_cache.emplace(key, pow(images.at(v), e)).first;
    return it->second;
  };

  PolyAccumulator acc;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> kept;
    Poly product(c);
    for (const auto& [v, e] : m.factors()) {
      if (images.count(v))
        product = product * image_power(v, e);
      else
        kept.emplace_back(v, e);
    }
    Monomial rest(std::move(kept));
    for (const auto& [pm, pc] : product.terms())
      acc.add_term(pm * rest, pc);
  }
  return acc.take();
}

} // namespace labkit
