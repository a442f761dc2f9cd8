#include "nade/text.hpp"

#include <fmt/format.h>

#include "nade/error.hpp"

namespace nade {

namespace {

// Returns the decoded code point and advances pos; throws on bad sequences.
char32_t next_codepoint(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    throw ValidationError(fmt::format("invalid UTF-8 lead byte at offset {}", pos));
  }
  if (pos + extra >= text.size()) {
    throw ValidationError(fmt::format("truncated UTF-8 sequence at offset {}", pos));
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      throw ValidationError(fmt::format("invalid UTF-8 continuation byte at offset {}", pos + i));
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw ValidationError(fmt::format("invalid UTF-8 code point at offset {}", pos));
  }
  pos += extra + 1;
  return cp;
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(next_codepoint(text, pos));
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::size_t codepoint_length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    next_codepoint(text, pos);
    ++n;
  }
  return n;
}

std::vector<std::size_t> codepoint_byte_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  offsets.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    offsets.push_back(pos);
    next_codepoint(text, pos);
  }
  offsets.push_back(text.size());
  return offsets;
}

std::string slice_codepoints(std::string_view text, std::size_t start, std::size_t end) {
  const auto offsets = codepoint_byte_offsets(text);
  const std::size_t length = offsets.size() - 1;
  if (start > end || end > length) {
    throw ValidationError(
        fmt::format("range [{},{}) exceeds text length {}", start, end, length));
  }
  return std::string(text.substr(offsets[start], offsets[end] - offsets[start]));
}

std::string fold_case(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  std::size_t pos = 0;
  while (pos < word.size()) {
    char32_t cp = next_codepoint(word, pos);
    if (cp >= 'A' && cp <= 'Z') {
      cp = cp - 'A' + 'a';
    } else if (cp == 0x2019 || cp == 0x02BC) {
      cp = '\'';
    }
    append_utf8(out, cp);
  }
  return out;
}

}  // namespace nade
