#ifndef NADE_NEGEX_HPP_
#define NADE_NEGEX_HPP_

// Rule-based negation-scope detection in the NegEx family: categorized cue
// phrases are matched over tokens, and PRE/POST cues open forward/backward
// scopes bounded by a token window, sentence breakers and other cues.

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nade/span.hpp"
#include "nade/tokenize.hpp"

namespace nade {

enum class CueCategory { Pre, Post, Pseudo, Termination };

std::string_view to_string(CueCategory c);
std::optional<CueCategory> parse_cue_category(std::string_view name);

struct CueEntry {
  std::vector<std::string> phrase;  // case-folded word tokens
  CueCategory category = CueCategory::Pre;
};

class CueLexicon {
 public:
  CueLexicon() = default;

  /// Tokenizes and case-folds the phrase. Throws ValidationError on an empty
  /// phrase or a duplicate (phrase, category) pair.
  void add(std::string_view phrase, CueCategory category);

  const std::vector<CueEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_phrase_length() const { return max_length_; }

  /// Highest-priority category registered for an exact phrase
  /// (PSEUDO > PRE > POST > TERMINATION), if any.
  std::optional<CueCategory> lookup(std::span<const std::string> folded_phrase) const;

 private:
  std::vector<CueEntry> entries_;
  std::map<std::vector<std::string>, unsigned, std::less<>> index_;  // bitmask of categories
  std::size_t max_length_ = 0;
};

/// Parses `CATEGORY<TAB>phrase` lines; '#' starts a comment line, blank
/// lines are skipped. Warnings (e.g. an empty lexicon) are appended to
/// `warnings` when provided. Throws ValidationError with the line number.
CueLexicon load_lexicon(std::istream& in, std::vector<std::string>* warnings = nullptr);
CueLexicon load_lexicon_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Contents of core/data/negex_default.tsv, compiled in.
std::string_view default_lexicon_text();
const CueLexicon& default_lexicon();

struct CueMatch {
  Span span;
  std::size_t token_begin = 0;  // [token_begin, token_end) into the token list
  std::size_t token_end = 0;
  CueCategory category = CueCategory::Pre;

  friend bool operator==(const CueMatch&, const CueMatch&) = default;
};

struct NegationScope {
  Span span;
  std::size_t token_begin = 0;
  std::size_t token_end = 0;
  CueMatch cue;

  std::size_t token_count() const { return token_end - token_begin; }
  friend bool operator==(const NegationScope&, const NegationScope&) = default;
};

struct NegexConfig {
  std::size_t window = 5;
  /// Single code points that end a scope. Punctuation breakers match
  /// punctuation tokens; '\n' matches line breaks between tokens.
  std::set<char32_t> sentence_breakers{'.', '!', '?', '\n'};

  /// Throws ValidationError when window == 0.
  void validate() const;
};

/// Greedy left-to-right scan; at each position the longest phrase wins.
std::vector<CueMatch> find_cues(std::span<const Token> tokens, const CueLexicon& lexicon);

std::vector<NegationScope> resolve_scopes(std::span<const Token> tokens,
                                          std::span<const CueMatch> cues,
                                          const NegexConfig& config);

/// tokenize -> find_cues -> resolve_scopes.
std::vector<NegationScope> detect(std::string_view text, const CueLexicon& lexicon,
                                  const NegexConfig& config = {});

}  // namespace nade

#endif  // NADE_NEGEX_HPP_
