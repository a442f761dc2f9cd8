#ifndef NADE_IOB_HPP_
#define NADE_IOB_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "nade/span.hpp"
#include "nade/tokenize.hpp"

namespace nade {

enum class IobTag { B, I, O };

char to_char(IobTag tag);

struct TaggedToken {
  Token token;
  IobTag tag = IobTag::O;
};

/// Tags every token of `text`. Entity spans that cut through a token are
/// widened to the covering tokens. Throws ValidationError if entities overlap.
std::vector<TaggedToken> spans_to_iob(std::string_view text, std::span<const Span> entities);

/// Decodes B I* runs into spans. An I that follows O (or starts the
/// sequence) opens a new entity, as if it were B.
std::vector<Span> iob_to_spans(std::span<const TaggedToken> tagged);

}  // namespace nade

#endif  // NADE_IOB_HPP_
