#include "labkit/enveloping.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "labkit/poly_io.hpp"

namespace labkit {

bool is_pbw_normal(const Word& w)
{
  return std::is_sorted(w.begin(), w.end());
}

std::size_t WordHash::operator()(const Word& w) const
{
  std::size_t h = 0x9e3779b97f4a7c15ull ^ w.size();
  for (auto x : w)
    h = (h ^ x) * 0x100000001b3ull;
  return h;
}

NCPoly::NCPoly(const GaussScalar& c)
{
  if (!c.is_zero())
    terms_.emplace(Word{}, c);
}

NCPoly NCPoly::word(Word w, const GaussScalar& c)
{
  NCPoly p;
  p.add_term(w, c);
  return p;
}

bool NCPoly::normalized() const
{
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return is_pbw_normal(t.first); });
}

void NCPoly::add_term(const Word& w, const GaussScalar& c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o)
{
  for (const auto& [w, c] : o.terms_)
    add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o)
{
  for (const auto& [w, c] : o.terms_)
    add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const GaussScalar& c)
{
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_)
    v *= c;
  return *this;
}

NCPoly NCPoly::operator-() const
{
  NCPoly r = *this;
  for (auto& [w, c] : r.terms_)
    c = -c;
  return r;
}

NCPoly concat(const NCPoly& a, const NCPoly& b)
{
  NCPoly r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

// ---------------------------------------------------------------------------

PbwNormalizer::PbwNormalizer(const LieAlgebra& alg) : alg_(alg) {}

const NCPoly& PbwNormalizer::insert(std::uint32_t letter, const Word& normal)
{
  Word key;
  key.reserve(normal.size() + 1);
  key.push_back(letter);
  key.insert(key.end(), normal.begin(), normal.end());
  if (auto it = inserts_.find(key); it != inserts_.end())
    return it->second;

  NCPoly result;
  if (normal.empty() || letter <= normal.front()) {
    result = NCPoly::word(key);
  } else {
    // X_a X_b rest = X_b (X_a rest) + [X_a, X_b] rest,  a > b
    const std::uint32_t b = normal.front();
    Word rest(normal.begin() + 1, normal.end());
    NCPoly moved = insert(letter, NCPoly::word(rest));
    result = insert(b, moved);
    for (const auto& t : alg_.bracket(letter, b)) {
      NCPoly tail = insert(static_cast<std::uint32_t>(t.k), rest);
      result += tail * t.c;
    }
  }
  return inserts_.emplace(std::move(key), std::move(result)).first->second;
}

NCPoly PbwNormalizer::insert(std::uint32_t letter, const NCPoly& normal)
{
  NCPoly out;
  for (const auto& [w, c] : normal.terms()) {
    const NCPoly& piece = insert(letter, w);
    for (const auto& [pw, pc] : piece.terms())
      out.add_term(pw, pc * c);
  }
  return out;
}

const NCPoly& PbwNormalizer::normalize_word(const Word& w)
{
  if (auto it = words_.find(w); it != words_.end())
    return it->second;
  for (auto x : w)
    if (x >= alg_.dim())
      throw std::out_of_range("normal_order: letter X" + std::to_string(x) + " out of range");
  NCPoly result;
  if (is_pbw_normal(w)) {
    result = NCPoly::word(w);
  } else {
    Word tail(w.begin() + 1, w.end());
    NCPoly normal_tail = normalize_word(tail);
    result = insert(w.front(), normal_tail);
  }
  return words_.emplace(w, std::move(result)).first->second;
}

NCPoly PbwNormalizer::normalize(const NCPoly& p)
{
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    const NCPoly& n = normalize_word(w);
    for (const auto& [nw, nc] : n.terms())
      out.add_term(nw, nc * c);
  }
  return out;
}

NCPoly PbwNormalizer::multiply(const NCPoly& a, const NCPoly& b)
{
  return normalize(concat(a, b));
}

NCPoly PbwNormalizer::commutator(const NCPoly& a, const NCPoly& b)
{
  return multiply(a, b) - multiply(b, a);
}

NCPoly PbwNormalizer::symmetrize(const Poly& f)
{
  NCPoly sum;
  for (const auto& [m, c] : f.terms()) {
    Word letters;
    for (const auto& [v, e] : m.factors()) {
      if (v >= alg_.dim())
        throw std::out_of_range("symmetrize: variable x" + std::to_string(v) + " out of range");
      letters.insert(letters.end(), e, v);
    }
    // letters is sorted; next_permutation walks the distinct orderings once
    std::vector<Word> orderings;
    do {
      orderings.push_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    GaussScalar weight = c / GaussScalar(static_cast<long>(orderings.size()));
    for (const auto& w : orderings)
      sum.add_term(w, weight);
  }
  return normalize(sum);
}

NCPoly normal_order(const LieAlgebra& alg, const NCPoly& p)
{
  return PbwNormalizer(alg).normalize(p);
}

NCPoly nc_mul(const LieAlgebra& alg, const NCPoly& a, const NCPoly& b)
{
  return PbwNormalizer(alg).multiply(a, b);
}

NCPoly nc_commutator(const LieAlgebra& alg, const NCPoly& a, const NCPoly& b)
{
  return PbwNormalizer(alg).commutator(a, b);
}

NCPoly symmetrize(const LieAlgebra& alg, const Poly& f)
{
  return PbwNormalizer(alg).symmetrize(f);
}

Poly project(const NCPoly& p)
{
  Poly out;
  for (const auto& [w, c] : p.terms()) {
    std::vector<Monomial::Factor> f;
    for (auto x : w)
      f.emplace_back(x, 1);
    out.add_term(Monomial(std::move(f)), c);
  }
  return out;
}

std::optional<std::size_t> filtration_degree(const NCPoly& p)
{
  if (p.is_zero())
    return std::nullopt;
  return p.terms().begin()->first.size();
}

Poly leading_symbol(const NCPoly& p, std::size_t d)
{
  NCPoly top;
  for (const auto& [w, c] : p.terms())
    if (w.size() == d)
      top.add_term(w, c);
  return project(top);
}

// ---------------------------------------------------------------------------

namespace {

class CommutationTable
{
public:
  explicit CommutationTable(const LieAlgebra& alg) : n_(alg.dim()), table_(n_ * n_, true)
  {
    for (const auto& [key, terms] : alg.brackets()) {
      table_[key.first * n_ + key.second] = false;
      table_[key.second * n_ + key.first] = false;
    }
  }
  bool commutes(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }

private:
  std::size_t n_;
  std::vector<bool> table_;
};

std::optional<Monomial> find_shared_factor(const CommutationTable& ct, const Monomial& m1,
                                           const Monomial& m2)
{
  std::vector<VarIndex> common;
  for (const auto& [v, e] : m1.factors())
    if (m2.exponent(v) > 0)
      common.push_back(v);
  if (common.empty())
    return std::nullopt;
  if (common.size() > 20)
    throw std::length_error("certify_nonfactorizable: too many shared variables");

  const std::uint32_t subsets = 1u << common.size();
  std::vector<VarIndex> shared, r1, r2;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    shared.clear();
    r1.clear();
    r2.clear();
    std::vector<Monomial::Factor> factor;
    for (std::size_t b = 0; b < common.size(); ++b)
      if (mask & (1u << b)) {
        VarIndex v = common[b];
        shared.push_back(v);
        factor.emplace_back(v, std::min(m1.exponent(v), m2.exponent(v)));
      }
    auto taken = [&](VarIndex v) -> std::uint32_t {
      for (const auto& [fv, fe] : factor)
        if (fv == v)
          return fe;
      return 0;
    };
    for (const auto& [v, e] : m1.factors())
      if (e > taken(v))
        r1.push_back(v);
    for (const auto& [v, e] : m2.factors())
      if (e > taken(v))
        r2.push_back(v);

    bool ok = true;
    for (VarIndex s : shared) {
      for (VarIndex v : r1)
        ok = ok && ct.commutes(s, v);
      for (VarIndex v : r2)
        ok = ok && ct.commutes(s, v);
      if (!ok)
        break;
    }
    for (std::size_t a = 0; ok && a < r1.size(); ++a)
      for (VarIndex v : r2)
        if (!ct.commutes(r1[a], v)) {
          ok = false;
          break;
        }
    if (ok)
      return Monomial(std::move(factor));
  }
  return std::nullopt;
}

} // namespace

FactorizabilityResult certify_nonfactorizable(const LieAlgebra& alg, const Poly& f, const Poly& g)
{
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("certify_nonfactorizable: polynomials must be nonzero");
  CommutationTable ct(alg);
  FactorizabilityResult result;
  for (const auto& [m1, c1] : f.terms())
    for (const auto& [m2, c2] : g.terms()) {
      ++result.pairs_examined;
      if (auto shared = find_shared_factor(ct, m1, m2)) {
        result.status = Factorizability::PossiblyFactorizable;
        result.witness = FactorizationWitness{m1, m2, *shared};
        return result;
      }
    }
  return result;
}

std::string to_string(Factorizability f)
{
  return f == Factorizability::NonFactorizable ? "NonFactorizable" : "PossiblyFactorizable";
}

// ---------------------------------------------------------------------------

namespace {

using detail::Token;
using detail::TokenKind;

class NCParser
{
public:
  NCParser(std::string_view text, std::size_t dim, const std::vector<std::string>& names)
    : text_(text), toks_(detail::tokenize(text)), dim_(dim), names_(names)
  {
  }

  NCPoly parse()
  {
    NCPoly result;
    bool negative = false;
    if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus)
      negative = next().kind == TokenKind::Minus;
    for (;;) {
      auto [c, w] = term();
      result.add_term(w, negative ? -c : c);
      if (peek().kind == TokenKind::End)
        break;
      if (peek().kind != TokenKind::Plus && peek().kind != TokenKind::Minus)
        throw ParseError("unexpected '" + peek().text + "'", peek().pos);
      negative = next().kind == TokenKind::Minus;
    }
    return result;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  static bool starts_factor(TokenKind k)
  {
    return k == TokenKind::Number || k == TokenKind::Ident || k == TokenKind::LParen;
  }

  std::pair<GaussScalar, Word> term()
  {
    GaussScalar c(1);
    Word w;
    factor(c, w);
    for (;;) {
      if (peek().kind == TokenKind::Star) {
        next();
        factor(c, w);
      } else if (starts_factor(peek().kind)) {
        factor(c, w);
      } else {
        break;
      }
    }
    return {c, w};
  }

  void factor(GaussScalar& c, Word& w)
  {
    const Token& tok = next();
    switch (tok.kind) {
    case TokenKind::Number: {
      mpz_class num(tok.text);
      mpq_class q(num);
      if (peek().kind == TokenKind::Slash) {
        next();
        const Token& den = next();
        if (den.kind != TokenKind::Number || mpz_class(den.text) == 0)
          throw ParseError("expected nonzero denominator", den.pos);
        q = mpq_class(num, mpz_class(den.text));
        q.canonicalize();
      }
      c *= GaussScalar(q);
      return;
    }
    case TokenKind::LParen: {
      int depth = 1;
      std::size_t start = tok.pos + 1;
      while (depth > 0) {
        const Token& t = next();
        if (t.kind == TokenKind::End)
          throw ParseError("expected ')'", t.pos);
        if (t.kind == TokenKind::LParen)
          ++depth;
        if (t.kind == TokenKind::RParen)
          --depth;
        if (depth == 0) {
          try {
            c *= parse_scalar(text_.substr(start, t.pos - start));
          } catch (const ParseError& e) {
            throw ParseError("invalid coefficient", start + e.position());
          }
        }
      }
      return;
    }
    case TokenKind::Ident:
      if (tok.text == "i") {
        c *= GaussScalar::imaginary_unit();
        return;
      }
      w.push_back(resolve(tok));
      return;
    default:
      throw ParseError(tok.kind == TokenKind::End ? "unexpected end of input"
                                                  : "unexpected '" + tok.text + "'",
                       tok.pos);
    }
  }

  // X<k> is the canonical spelling and wins over a generator name that looks
  // the same, so formatted output always parses back to itself.
  std::uint32_t resolve(const Token& tok) const
  {
    std::optional<std::size_t> index;
    if (tok.text.size() > 1 && tok.text[0] == 'X' &&
        std::all_of(tok.text.begin() + 1, tok.text.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      index = std::stoul(tok.text.substr(1));
    } else if (auto it = std::find(names_.begin(), names_.end(), tok.text); it != names_.end()) {
      index = static_cast<std::size_t>(it - names_.begin());
    }
    if (!index || *index >= dim_)
      throw ParseError("unknown generator '" + tok.text + "'", tok.pos);
    return static_cast<std::uint32_t>(*index);
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t dim_;
  const std::vector<std::string>& names_;
};

} // namespace

NCPoly parse_ncpoly(std::string_view text, std::size_t dim, const std::vector<std::string>& names)
{
  return NCParser(text, dim, names).parse();
}

std::string format_ncpoly(const NCPoly& p)
{
  if (p.is_zero())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    auto [negative, mag] = detail::split_sign(c);
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    std::string letters;
    for (auto x : w) {
      if (!letters.empty())
        letters += " ";
      letters += "X" + std::to_string(x);
    }
    if (letters.empty())
      out << detail::scalar_factor(mag);
    else if (mag.is_one())
      out << letters;
    else
      out << detail::scalar_factor(mag) << "*" << letters;
  }
  return out.str();
}

} // namespace labkit
