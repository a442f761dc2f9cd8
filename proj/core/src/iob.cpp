#include "nade/iob.hpp"

#include <optional>

namespace nade {

char to_char(IobTag tag) {
  switch (tag) {
    case IobTag::B: return 'B';
    case IobTag::I: return 'I';
    case IobTag::O: return 'O';
  }
  return 'O';
}

std::vector<TaggedToken> spans_to_iob(std::string_view text, std::span<const Span> entities) {
  const auto sorted = require_disjoint(entities, "entity spans");
  auto tokens = tokenize(text);

  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  std::size_t next_entity = 0;
  std::optional<std::size_t> open_entity;
  for (auto& token : tokens) {
    while (next_entity < sorted.size() && sorted[next_entity].end <= token.span.start) {
      ++next_entity;
    }
    IobTag tag = IobTag::O;
    if (next_entity < sorted.size() && overlaps(sorted[next_entity], token.span)) {
      tag = (open_entity == next_entity) ? IobTag::I : IobTag::B;
      open_entity = next_entity;
    } else {
      open_entity.reset();
    }
    out.push_back(TaggedToken{std::move(token), tag});
  }
  return out;
}

std::vector<Span> iob_to_spans(std::span<const TaggedToken> tagged) {
  std::vector<Span> spans;
  std::optional<Span> current;
  for (const auto& t : tagged) {
    if (t.tag == IobTag::O) {
      if (current) spans.push_back(*current);
      current.reset();
    } else if (t.tag == IobTag::B || !current) {
      if (current) spans.push_back(*current);
      current = t.token.span;
    } else {
      current->end = t.token.span.end;
    }
  }
  if (current) spans.push_back(*current);
  return spans;
}

}  // namespace nade
