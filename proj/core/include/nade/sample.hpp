#ifndef NADE_SAMPLE_HPP_
#define NADE_SAMPLE_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nade/span.hpp"

namespace nade {

enum class Category { ADE, NoADE, NegADE_R, NegADE_G };

/// Reporting bucket: both negADE variants report as one category.
enum class FpBucket { ADE = 0, NoADE = 1, NegADE = 2 };

inline constexpr std::array<FpBucket, 3> kAllBuckets{FpBucket::ADE, FpBucket::NoADE,
                                                     FpBucket::NegADE};

std::string_view to_string(Category c);
std::string_view to_string(FpBucket b);
/// Accepts the canonical names ADE, noADE, negADE_R, negADE_G.
std::optional<Category> parse_category(std::string_view name);
FpBucket bucket_of(Category c);

struct Sample {
  std::string id;
  std::string text;
  Category category = Category::NoADE;
  std::vector<Span> gold_spans;          // sorted, disjoint; empty unless ADE
  std::optional<std::string> origin_id;  // set only for negADE_G
};

/// Checks the per-sample invariants (gold only on ADE samples, origin only on
/// negADE_G, spans disjoint and inside the text). Sorts gold_spans in place.
/// Throws ValidationError.
void validate_sample(Sample& sample);

}  // namespace nade

#endif  // NADE_SAMPLE_HPP_
