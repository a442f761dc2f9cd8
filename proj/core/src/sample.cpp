#include "nade/sample.hpp"

#include <fmt/format.h>

#include "nade/error.hpp"
#include "nade/text.hpp"

namespace nade {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::ADE: return "ADE";
    case Category::NoADE: return "noADE";
    case Category::NegADE_R: return "negADE_R";
    case Category::NegADE_G: return "negADE_G";
  }
  return "?";
}

std::string_view to_string(FpBucket b) {
  switch (b) {
    case FpBucket::ADE: return "ADE";
    case FpBucket::NoADE: return "noADE";
    case FpBucket::NegADE: return "negADE";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view name) {
  if (name == "ADE") return Category::ADE;
  if (name == "noADE") return Category::NoADE;
  if (name == "negADE_R") return Category::NegADE_R;
  if (name == "negADE_G") return Category::NegADE_G;
  return std::nullopt;
}

FpBucket bucket_of(Category c) {
  switch (c) {
    case Category::ADE: return FpBucket::ADE;
    case Category::NoADE: return FpBucket::NoADE;
    default: return FpBucket::NegADE;
  }
}

void validate_sample(Sample& sample) {
  if (sample.id.empty()) throw ValidationError("sample with empty id");
  const auto where = [&] { return fmt::format("sample '{}'", sample.id); };
  if (sample.category != Category::ADE && !sample.gold_spans.empty()) {
    throw ValidationError(fmt::format("{}: gold spans on a {} sample", where(),
                                      to_string(sample.category)));
  }
  const bool generated = sample.category == Category::NegADE_G;
  if (generated && (!sample.origin_id || sample.origin_id->empty())) {
    throw ValidationError(fmt::format("{}: negADE_G sample without origin_id", where()));
  }
  if (!generated && sample.origin_id) {
    throw ValidationError(fmt::format("{}: origin_id is only allowed on negADE_G", where()));
  }
  sample.gold_spans = require_disjoint(sample.gold_spans, where() + " gold");
  const std::size_t length = codepoint_length(sample.text);
  for (const auto& s : sample.gold_spans) {
    if (s.end > length) {
      throw ValidationError(fmt::format("{}: span {} out of bounds (text length {})", where(),
                                        to_string(s), length));
    }
  }
}

}  // namespace nade
