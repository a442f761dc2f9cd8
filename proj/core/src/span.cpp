#include "nade/span.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "nade/error.hpp"

namespace nade {

Span make_span(std::size_t start, std::size_t end) {
  if (start >= end) {
    throw ValidationError(fmt::format("empty or inverted span [{},{})", start, end));
  }
  return Span{start, end};
}

std::vector<Span> sorted_spans(std::span<const Span> spans) {
  std::vector<Span> out(spans.begin(), spans.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool disjoint_sorted(std::span<const Span> sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start < sorted[i - 1].end) return false;
  }
  return true;
}

std::vector<Span> require_disjoint(std::span<const Span> spans, const std::string& what) {
  auto sorted = sorted_spans(spans);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!sorted[i].valid()) {
      throw ValidationError(fmt::format("{}: empty span {}", what, to_string(sorted[i])));
    }
    if (i > 0 && sorted[i].start < sorted[i - 1].end) {
      throw ValidationError(fmt::format("{}: overlapping spans {} and {}", what,
                                        to_string(sorted[i - 1]), to_string(sorted[i])));
    }
  }
  return sorted;
}

std::vector<Span> merge_overlapping(std::span<const Span> spans) {
  auto sorted = sorted_spans(spans);
  std::vector<Span> out;
  for (const auto& s : sorted) {
    if (!out.empty() && s.start < out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::string to_string(const Span& span) { return fmt::format("[{},{})", span.start, span.end); }

}  // namespace nade
