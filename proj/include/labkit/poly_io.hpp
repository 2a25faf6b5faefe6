#ifndef LABKIT_POLY_IO_HPP
#define LABKIT_POLY_IO_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "labkit/poly.hpp"

namespace labkit {

/// Syntax or name-resolution error, with the 0-based character offset.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

struct PolyParseOptions
{
  /// Size of the variable universe; x<k> with k >= nvars is rejected.
  std::optional<std::size_t> nvars;
  /// Optional generator names accepted as aliases for x<k>.
  std::vector<std::string> names;
};

/*
 * Text grammar (whitespace ignored):
 *
 *   poly    := [sign] term (sign term)*
 *   term    := factor ('*' factor)*
 *   factor  := integer ['/' integer] | 'i' | var ['^' integer] | '(' poly ')' ['^' integer]
 *   var     := 'x' digits | one of the supplied generator names
 *
 * so coefficients such as 3, 1/2, i, 1/2*i and (1/2+3/4*i) are all accepted.
 */
Poly parse_poly(std::string_view text, const PolyParseOptions& options = {});
GaussScalar parse_scalar(std::string_view text);

/// Canonical text: descending graded-lex order, "x0^2 - 1/2*x1 + i*x2".
std::string format_poly(const Poly& p);
std::string format_scalar(const GaussScalar& c);

namespace detail {

/// Splits c into a sign flag and the magnitude printed after the sign; the
/// sign is only extracted for purely real or purely imaginary values.
std::pair<bool, GaussScalar> split_sign(const GaussScalar& c);
/// Scalar text usable as a '*'-separated factor (complex values parenthesized).
std::string scalar_factor(const GaussScalar& c);

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token
{
  TokenKind kind;
  std::string text;
  std::size_t pos;
  bool space_before;
};

std::vector<Token> tokenize(std::string_view text);

} // namespace detail

} // namespace labkit

#endif
