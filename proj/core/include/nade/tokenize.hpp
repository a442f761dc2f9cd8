#ifndef NADE_TOKENIZE_HPP_
#define NADE_TOKENIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "nade/span.hpp"

namespace nade {

enum class TokenKind { Word, Punct };

struct Token {
  std::string surface;  // UTF-8 slice of the source text
  Span span;            // code-point offsets
  TokenKind kind = TokenKind::Word;
  bool after_newline = false;  // a '\n' occurs between the previous token and this one

  bool is_word() const { return kind == TokenKind::Word; }
  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits text into word and punctuation tokens.
///
/// Words are maximal runs of letters, digits and apostrophes (ASCII ' and
/// U+2019). Every other non-space code point is a single punctuation token,
/// except that '#' or '@' directly followed by a word character is glued to
/// that word ("#HUMIRA", "@UKingsbrook"). Non-ASCII code points count as
/// letters unless they fall in a known punctuation, symbol or emoji block.
std::vector<Token> tokenize(std::string_view text);

}  // namespace nade

#endif  // NADE_TOKENIZE_HPP_
