#include "labkit/poly_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace labkit {

ParseError::ParseError(const std::string& what, std::size_t position)
  : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
{
}

namespace detail {

std::vector<Token> tokenize(std::string_view text)
{
  std::vector<Token> out;
  std::size_t i = 0;
  bool space = false;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      space = true;
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      out.push_back({TokenKind::Number, std::string(text.substr(start, i - start)), start, space});
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      out.push_back({TokenKind::Ident, std::string(text.substr(start, i - start)), start, space});
    } else {
      TokenKind k;
      switch (ch) {
      case '+': k = TokenKind::Plus; break;
      case '-': k = TokenKind::Minus; break;
      case '*': k = TokenKind::Star; break;
      case '/': k = TokenKind::Slash; break;
      case '^': k = TokenKind::Caret; break;
      case '(': k = TokenKind::LParen; break;
      case ')': k = TokenKind::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", i);
      }
      out.push_back({k, std::string(1, ch), start, space});
      ++i;
    }
    space = false;
  }
  out.push_back({TokenKind::End, "", text.size(), space});
  return out;
}

std::pair<bool, GaussScalar> split_sign(const GaussScalar& c)
{
  if (c.is_real())
    return {sgn(c.re()) < 0, sgn(c.re()) < 0 ? -c : c};
  if (sgn(c.re()) == 0)
    return {sgn(c.im()) < 0, sgn(c.im()) < 0 ? -c : c};
  return {false, c};
}

std::string scalar_factor(const GaussScalar& c)
{
  std::string s = format_scalar(c);
  if (!c.is_real() && sgn(c.re()) != 0)
    return "(" + s + ")";
  if (c.is_real() && sgn(c.re()) < 0)
    return "(" + s + ")";
  return s;
}

} // namespace detail

namespace {

using detail::Token;
using detail::TokenKind;

class PolyParser
{
public:
  PolyParser(std::string_view text, const PolyParseOptions& options)
    : toks_(detail::tokenize(text)), options_(options)
  {
  }

  Poly parse()
  {
    Poly p = sum();
    if (peek().kind != TokenKind::End)
      throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  Poly sum()
  {
    Poly result;
    bool negative = false;
    if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus)
      negative = next().kind == TokenKind::Minus;
    for (;;) {
      Poly t = term();
      if (negative)
        result -= t;
      else
        result += t;
      if (peek().kind != TokenKind::Plus && peek().kind != TokenKind::Minus)
        break;
      negative = next().kind == TokenKind::Minus;
    }
    return result;
  }

  Poly term()
  {
    Poly t = factor();
    while (peek().kind == TokenKind::Star) {
      next();
      t = t * factor();
    }
    return t;
  }

  std::uint32_t exponent()
  {
    const Token& tok = next();
    if (tok.kind != TokenKind::Number)
      throw ParseError("expected integer exponent", tok.pos);
    return static_cast<std::uint32_t>(std::stoul(tok.text));
  }

  Poly factor()
  {
    const Token& tok = next();
    switch (tok.kind) {
    case TokenKind::Number: {
      mpz_class num(tok.text);
      if (peek().kind == TokenKind::Slash) {
        next();
        const Token& den = next();
        if (den.kind != TokenKind::Number)
          throw ParseError("expected denominator", den.pos);
        mpz_class d(den.text);
        if (d == 0)
          throw ParseError("zero denominator", den.pos);
        return Poly(GaussScalar(mpq_class(num, d)));
      }
      return Poly(GaussScalar(mpq_class(num)));
    }
    case TokenKind::Ident: {
      if (tok.text == "i")
        return Poly(GaussScalar::imaginary_unit());
      VarIndex v = resolve(tok);
      std::uint32_t e = 1;
      if (peek().kind == TokenKind::Caret) {
        next();
        e = exponent();
      }
      return Poly::term(Monomial::variable(v, e), GaussScalar(1));
    }
    case TokenKind::LParen: {
      Poly inner = sum();
      const Token& close = next();
      if (close.kind != TokenKind::RParen)
        throw ParseError("expected ')'", close.pos);
      if (peek().kind == TokenKind::Caret) {
        next();
        inner = pow(inner, exponent());
      }
      return inner;
    }
    default:
      throw ParseError(tok.kind == TokenKind::End ? "unexpected end of input"
                                                  : "unexpected '" + tok.text + "'",
                       tok.pos);
    }
  }

  VarIndex resolve(const Token& tok) const
  {
    const auto& names = options_.names;
    auto it = std::find(names.begin(), names.end(), tok.text);
    std::optional<std::size_t> index;
    if (it != names.end()) {
      index = static_cast<std::size_t>(it - names.begin());
    } else if (tok.text.size() > 1 && tok.text[0] == 'x' &&
               std::all_of(tok.text.begin() + 1, tok.text.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      index = std::stoul(tok.text.substr(1));
    }
    if (!index)
      throw ParseError("unknown variable '" + tok.text + "'", tok.pos);
    if (options_.nvars && *index >= *options_.nvars)
      throw ParseError("unknown variable '" + tok.text + "' (universe has " +
                         std::to_string(*options_.nvars) + " variables)",
                       tok.pos);
    return static_cast<VarIndex>(*index);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const PolyParseOptions& options_;
};

} // namespace

Poly parse_poly(std::string_view text, const PolyParseOptions& options)
{
  return PolyParser(text, options).parse();
}

GaussScalar parse_scalar(std::string_view text)
{
  PolyParseOptions opts;
  opts.nvars = 0;
  Poly p = parse_poly(text, opts);
  return p.constant_term();
}

std::string format_scalar(const GaussScalar& c)
{
  if (c.is_real())
    return c.re().get_str();
  auto imag = [](const mpq_class& q) {
    if (q == 1)
      return std::string("i");
    if (q == -1)
      return std::string("-i");
    return q.get_str() + "*i";
  };
  if (sgn(c.re()) == 0)
    return imag(c.im());
  std::string s = c.re().get_str();
  std::string im = imag(c.im());
  return s + (im[0] == '-' ? im : "+" + im);
}

std::string format_poly(const Poly& p)
{
  if (p.is_zero())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    auto [negative, mag] = detail::split_sign(c);
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;

    std::string vars;
    for (const auto& [v, e] : m.factors()) {
      if (!vars.empty())
        vars += "*";
      vars += "x" + std::to_string(v);
      if (e > 1)
        vars += "^" + std::to_string(e);
    }
    if (vars.empty())
      out << detail::scalar_factor(mag);
    else if (mag.is_one())
      out << vars;
    else
      out << detail::scalar_factor(mag) << "*" << vars;
  }
  return out.str();
}

} // namespace labkit
