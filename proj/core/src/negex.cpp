#include "nade/negex.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "nade/error.hpp"
#include "nade/text.hpp"

namespace nade {

namespace {

// Lower rank wins ties at equal phrase length.
constexpr CueCategory kPriority[] = {CueCategory::Pseudo, CueCategory::Pre, CueCategory::Post,
                                     CueCategory::Termination};

unsigned bit(CueCategory c) { return 1u << static_cast<unsigned>(c); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string_view to_string(CueCategory c) {
  switch (c) {
    case CueCategory::Pre: return "PRE";
    case CueCategory::Post: return "POST";
    case CueCategory::Pseudo: return "PSEUDO";
    case CueCategory::Termination: return "TERMINATION";
  }
  return "?";
}

std::optional<CueCategory> parse_cue_category(std::string_view name) {
  if (name == "PRE") return CueCategory::Pre;
  if (name == "POST") return CueCategory::Post;
  if (name == "PSEUDO") return CueCategory::Pseudo;
  if (name == "TERMINATION") return CueCategory::Termination;
  return std::nullopt;
}

void CueLexicon::add(std::string_view phrase, CueCategory category) {
  std::vector<std::string> folded;
  for (const auto& token : tokenize(phrase)) folded.push_back(fold_case(token.surface));
  if (folded.empty()) throw ValidationError("empty cue phrase");

  auto& mask = index_[folded];
  if (mask & bit(category)) {
    throw ValidationError(
        fmt::format("duplicate cue '{}' in category {}", trim(phrase), to_string(category)));
  }
  mask |= bit(category);
  max_length_ = std::max(max_length_, folded.size());
  entries_.push_back(CueEntry{std::move(folded), category});
}

std::optional<CueCategory> CueLexicon::lookup(std::span<const std::string> folded_phrase) const {
  const auto it = index_.find(std::vector<std::string>(folded_phrase.begin(), folded_phrase.end()));
  if (it == index_.end()) return std::nullopt;
  for (auto c : kPriority) {
    if (it->second & bit(c)) return c;
  }
  return std::nullopt;
}

CueLexicon load_lexicon(std::istream& in, std::vector<std::string>* warnings) {
  CueLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ValidationError(fmt::format("lexicon line {}: expected CATEGORY<TAB>phrase", line_no));
    }
    const std::string name = trim(std::string_view(line).substr(0, tab));
    const auto category = parse_cue_category(name);
    if (!category) {
      throw ValidationError(fmt::format("lexicon line {}: unknown category '{}'", line_no, name));
    }
    try {
      lexicon.add(std::string_view(line).substr(tab + 1), *category);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("lexicon line {}: {}", line_no, e.what()));
    }
  }
  if (in.bad()) throw IoError("failed reading lexicon");
  if (lexicon.empty() && warnings) warnings->push_back("lexicon is empty; no cues will match");
  return lexicon;
}

CueLexicon load_lexicon_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open lexicon '{}'", path));
  return load_lexicon(in, warnings);
}

const CueLexicon& default_lexicon() {
  static const CueLexicon lexicon = [] {
    std::istringstream in{std::string(default_lexicon_text())};
    return load_lexicon(in);
  }();
  return lexicon;
}

void NegexConfig::validate() const {
  if (window == 0) throw ValidationError("negex window must be >= 1");
}

std::vector<CueMatch> find_cues(std::span<const Token> tokens, const CueLexicon& lexicon) {
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const auto& t : tokens) folded.push_back(fold_case(t.surface));

  std::vector<CueMatch> matches;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest = std::min(lexicon.max_phrase_length(), tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      const auto category = lexicon.lookup(std::span(folded).subspan(i, len));
      if (!category) continue;
      matches.push_back(CueMatch{Span{tokens[i].span.start, tokens[i + len - 1].span.end}, i,
                                 i + len, *category});
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return matches;
}

std::vector<NegationScope> resolve_scopes(std::span<const Token> tokens,
                                          std::span<const CueMatch> cues,
                                          const NegexConfig& config) {
  config.validate();
  const std::size_t n = tokens.size();

  // Tokens covered by a scope-blocking (non-PSEUDO) cue.
  std::vector<bool> blocked(n, false);
  for (const auto& cue : cues) {
    if (cue.category == CueCategory::Pseudo) continue;
    for (std::size_t k = cue.token_begin; k < cue.token_end && k < n; ++k) blocked[k] = true;
  }
  std::vector<bool> breaker(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& t = tokens[k];
    if (t.kind == TokenKind::Punct) {
      const auto cps = decode_utf8(t.surface);
      breaker[k] = cps.size() == 1 && config.sentence_breakers.contains(cps[0]);
    }
  }
  const bool newline_breaks = config.sentence_breakers.contains(U'\n');
  // True when a line break separates token k-1 from token k.
  auto line_break_before = [&](std::size_t k) {
    return newline_breaks && tokens[k].after_newline;
  };

  std::vector<NegationScope> scopes;
  for (const auto& cue : cues) {
    std::size_t first = 0;
    std::size_t last = 0;  // exclusive
    if (cue.category == CueCategory::Pre) {
      std::size_t k = cue.token_end;
      while (k < n && k - cue.token_end < config.window) {
        if (breaker[k] || blocked[k] || line_break_before(k)) break;
        ++k;
      }
      first = cue.token_end;
      last = k;
    } else if (cue.category == CueCategory::Post) {
      std::size_t k = cue.token_begin;
      while (k > 0 && cue.token_begin - k < config.window) {
        if (breaker[k - 1] || blocked[k - 1] || line_break_before(k)) break;
        --k;
      }
      first = k;
      last = cue.token_begin;
    } else {
      continue;
    }
    if (first >= last) continue;
    scopes.push_back(
        NegationScope{Span{tokens[first].span.start, tokens[last - 1].span.end}, first, last, cue});
  }
  std::stable_sort(scopes.begin(), scopes.end(), [](const auto& a, const auto& b) {
    return a.span.start < b.span.start;
  });
  return scopes;
}

std::vector<NegationScope> detect(std::string_view text, const CueLexicon& lexicon,
                                  const NegexConfig& config) {
  const auto tokens = tokenize(text);
  const auto cues = find_cues(tokens, lexicon);
  return resolve_scopes(tokens, cues, config);
}

}  // namespace nade
