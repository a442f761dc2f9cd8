#ifndef NADE_TEXT_HPP_
#define NADE_TEXT_HPP_

// UTF-8 helpers. All public offsets in this library count Unicode scalar
// values (code points), never bytes.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nade {

/// Decodes UTF-8 into code points. Throws ValidationError on malformed input.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

/// Number of code points in a UTF-8 string.
std::size_t codepoint_length(std::string_view text);

/// Substring by code-point offsets [start, end). Throws ValidationError if
/// the range exceeds the text.
std::string slice_codepoints(std::string_view text, std::size_t start, std::size_t end);

/// Byte offset of every code point plus a trailing entry equal to text.size().
std::vector<std::size_t> codepoint_byte_offsets(std::string_view text);

/// ASCII lowercasing plus folding of typographic apostrophes to '\''.
/// Non-ASCII letters are left untouched.
std::string fold_case(std::string_view word);

}  // namespace nade

#endif  // NADE_TEXT_HPP_
