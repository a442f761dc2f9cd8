#ifndef NADE_SPAN_HPP_
#define NADE_SPAN_HPP_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nade {

/// Half-open interval [start, end) of code-point offsets. Empty spans are
/// not valid; use make_span() when the bounds come from untrusted input.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool valid() const { return start < end; }

  friend auto operator<=>(const Span&, const Span&) = default;
};

/// Validating constructor; throws ValidationError when start >= end.
Span make_span(std::size_t start, std::size_t end);

/// True iff the spans share at least one code point.
constexpr bool overlaps(const Span& a, const Span& b) {
  return (a.start > b.start ? a.start : b.start) < (a.end < b.end ? a.end : b.end);
}

/// Sorted copy of the spans.
std::vector<Span> sorted_spans(std::span<const Span> spans);

/// True iff sorted spans are pairwise disjoint. Touching spans are disjoint.
bool disjoint_sorted(std::span<const Span> sorted);

/// Sorts and checks the list; throws ValidationError naming `what` if two
/// spans overlap or one is empty.
std::vector<Span> require_disjoint(std::span<const Span> spans, const std::string& what);

/// Sorts and unions overlapping spans. Touching spans stay separate.
std::vector<Span> merge_overlapping(std::span<const Span> spans);

std::string to_string(const Span& span);

}  // namespace nade

#endif  // NADE_SPAN_HPP_
