#include "nade/tokenize.hpp"

#include "nade/text.hpp"

namespace nade {

namespace {

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0xFEFF: case 0x200B:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == 0x02BC; }

bool is_symbol_block(char32_t cp) {
  return (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
         (cp >= 0x2010 && cp <= 0x205E) ||  // general punctuation
         (cp >= 0x20A0 && cp <= 0x20CF) ||  // currency
         (cp >= 0x2100 && cp <= 0x2BFF) ||  // letterlike, arrows, math, shapes, dingbats
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK punctuation
         (cp >= 0xE000 && cp <= 0xF8FF) ||  // private use
         (cp >= 0xFE00 && cp <= 0xFE0F) ||  // variation selectors
         (cp >= 0xFE30 && cp <= 0xFE4F) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65) || (cp >= 0x1F000 && cp <= 0x1FAFF);
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
           cp == '\'';
  }
  if (is_apostrophe(cp)) return true;
  return !is_space(cp) && !is_symbol_block(cp);
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = decode_utf8(text);
  std::vector<Token> tokens;
  bool newline_pending = false;
  std::size_t i = 0;
  const std::size_t n = cps.size();

  auto emit = [&](std::size_t start, std::size_t end, TokenKind kind) {
    tokens.push_back(Token{encode_utf8(std::u32string_view(cps).substr(start, end - start)),
                           Span{start, end}, kind, newline_pending});
    newline_pending = false;
  };

  while (i < n) {
    const char32_t cp = cps[i];
    if (is_space(cp)) {
      if (cp == '\n') newline_pending = true;
      ++i;
      continue;
    }
    const bool sigil = (cp == '#' || cp == '@') && i + 1 < n && is_word_char(cps[i + 1]);
    if (sigil || is_word_char(cp)) {
      std::size_t j = sigil ? i + 1 : i;
      while (j < n && is_word_char(cps[j])) ++j;
      emit(i, j, TokenKind::Word);
      i = j;
    } else {
      emit(i, i + 1, TokenKind::Punct);
      ++i;
    }
  }
  return tokens;
}

}  // namespace nade
