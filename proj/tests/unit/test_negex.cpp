#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "micro_corpus.hpp"
#include "nade/error.hpp"
#include "nade/negex.hpp"
#include "nade/text.hpp"
#include "nade/tokenize.hpp"
#include "test_support.hpp"

using namespace nade;
using nade::testing::Rng;

namespace {

CueLexicon lexicon_of(const std::string& tsv, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(tsv);
  return load_lexicon(in, warnings);
}

std::string slice(const std::string& text, const Span& s) {
  return slice_codepoints(text, s.start, s.end);
}

std::vector<std::string> scope_texts(const std::string& text, const CueLexicon& lex,
                                     const NegexConfig& config = {}) {
  std::vector<std::string> out;
  for (const auto& s : detect(text, lex, config)) out.push_back(slice(text, s.span));
  return out;
}

const std::vector<std::string> kVocabulary{
    "no",  "not",      "never", "pain",    "nausea", "crazy",  "sleep", "increase", "change",
    "but", "however",  "I",     "feel",    "this",   "drug",   "was",   "ruled",    "out",
    "unlikely", "longer", "free", "of",    "only",   ".",      ",",     "!",        "\n",
    "didn't", "missing", "headache", "and", "the",   "#RA",    "Without"};

std::string random_text(Rng& rng, std::size_t max_words) {
  std::string text;
  const auto n = rng.uniform(0, max_words);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += ' ';
    text += rng.pick(kVocabulary);
  }
  return text;
}

bool is_breaker(const Token& t, const NegexConfig& config) {
  if (t.kind != TokenKind::Punct) return false;
  const auto cps = decode_utf8(t.surface);
  return cps.size() == 1 && config.sentence_breakers.count(cps[0]) > 0;
}

}  // namespace

TEST_SUITE("negex lexicon") {
  TEST_CASE("loading") {
    const auto lex = lexicon_of("# comment\n\nPRE\tno longer\nPOST\tUnlikely\n");
    REQUIRE(lex.size() == 2);
    CHECK(lex.entries()[0].phrase == std::vector<std::string>{"no", "longer"});
    CHECK(lex.entries()[0].category == CueCategory::Pre);
    CHECK(lex.entries()[1].phrase == std::vector<std::string>{"unlikely"});
    CHECK(lex.max_phrase_length() == 2);
  }

  TEST_CASE("empty document warns") {
    std::vector<std::string> warnings;
    const auto lex = lexicon_of("# nothing here\n", &warnings);
    CHECK(lex.empty());
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("errors carry the line number") {
    try {
      lexicon_of("PRE\tno\nNEG\tno\n");
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(lexicon_of("PRE\tno\nPRE\tNo\n"), ValidationError);
    CHECK_THROWS_AS(lexicon_of("PRE\t  \n"), ValidationError);
    CHECK_THROWS_AS(lexicon_of("PRE no\n"), ValidationError);
    CHECK_NOTHROW(lexicon_of("PRE\tno\nPSEUDO\tno\n"));
    CHECK_THROWS_AS(load_lexicon_file("/nonexistent/lexicon.tsv"), IoError);
  }

  TEST_CASE("default lexicon contains the BioScope cues") {
    const auto& lex = default_lexicon();
    const std::vector<std::string> none{"none"}, missing{"missing"}, no_longer{"no", "longer"};
    CHECK(lex.lookup(none) == CueCategory::Pre);
    CHECK(lex.lookup(missing) == CueCategory::Pre);
    CHECK(lex.lookup(no_longer) == CueCategory::Pre);
    const std::vector<std::string> ruled{"was", "ruled", "out"}, inc{"no", "increase"};
    CHECK(lex.lookup(ruled) == CueCategory::Post);
    CHECK(lex.lookup(inc) == CueCategory::Pseudo);
    CHECK(lex.size() == 26);
  }
}

TEST_SUITE("negex cues") {
  TEST_CASE("longest match and PSEUDO priority") {
    const auto lex = lexicon_of("PRE\tno\nPSEUDO\tno increase\n");
    const auto cues = find_cues(tokenize("no increase in appetite"), lex);
    REQUIRE(cues.size() == 1);
    CHECK(cues[0].category == CueCategory::Pseudo);
    CHECK(cues[0].span == Span{0, 11});
    CHECK(cues[0].token_begin == 0);
    CHECK(cues[0].token_end == 2);

    const auto tie = lexicon_of("PRE\tnot only\nPSEUDO\tnot only\n");
    const auto tie_cues = find_cues(tokenize("Not only"), tie);
    REQUIRE(tie_cues.size() == 1);
    CHECK(tie_cues[0].category == CueCategory::Pseudo);
  }

  TEST_CASE("repeated cues and no cues") {
    const auto lex = lexicon_of("PRE\tno\n");
    const auto cues = find_cues(tokenize("No pain no inflammation"), lex);
    REQUIRE(cues.size() == 2);
    CHECK(cues[0].span == Span{0, 2});
    CHECK(cues[1].span == Span{8, 10});
    CHECK(find_cues(tokenize("I love this drug"), lex).empty());
    CHECK(find_cues(tokenize("nothing at all"), lex).empty());
  }
}

TEST_SUITE("negex scopes") {
  TEST_CASE("examples") {
    const auto& lex = default_lexicon();
    CHECK(scope_texts("fluoxetine, didn't get me going crazy.", lex) ==
          std::vector<std::string>{"get me going crazy"});
    CHECK(scope_texts("No pain no inflammation no nothing", lex) ==
          std::vector<std::string>{"pain", "inflammation", "nothing"});
    CHECK(scope_texts("no increase in appetite", lex).empty());
    CHECK(scope_texts("But I'm not on adderall and I am feasting.", lex) ==
          std::vector<std::string>{"on adderall and I am"});
    CHECK(detect("", lex).empty());
    CHECK(detect("I love this drug", lex).empty());
    CHECK(detect("not.", lex).empty());
  }

  TEST_CASE("window and breakers are configurable") {
    const auto& lex = default_lexicon();
    NegexConfig narrow;
    narrow.window = 2;
    CHECK(scope_texts("not on adderall and I am", lex, narrow) ==
          std::vector<std::string>{"on adderall"});
    NegexConfig no_newline;
    no_newline.sentence_breakers = {'.'};
    CHECK(scope_texts("doesn't work\nat all", lex, no_newline) ==
          std::vector<std::string>{"work\nat all"});
    CHECK(scope_texts("doesn't work\nat all", lex) == std::vector<std::string>{"work"});
    NegexConfig zero;
    zero.window = 0;
    CHECK_THROWS_AS(zero.validate(), ValidationError);
  }

  TEST_CASE("POST scopes run backwards and stop at other cues") {
    const auto& lex = default_lexicon();
    CHECK(scope_texts("Headache was ruled out after the scan", lex) ==
          std::vector<std::string>{"Headache"});
    CHECK(scope_texts("I feel fine but rash unlikely", lex) == std::vector<std::string>{"rash"});
  }

  TEST_CASE("hand-traced micro corpus") {
    const auto cases = testing::load_micro_corpus(testing::data_path("negex_micro_corpus.tsv").string());
    CHECK(cases.size() == 25);
    for (const auto& c : cases) {
      INFO(c.text);
      CHECK(testing::compare_micro_case(c, detect(c.text, default_lexicon())) == "");
    }
  }

  TEST_CASE("scope invariants on random texts") {
    const auto& lex = default_lexicon();
    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
      const auto text = random_text(rng, 25);
      NegexConfig config;
      config.window = rng.uniform(1, 6);
      const auto tokens = tokenize(text);
      const auto cues = find_cues(tokens, lex);
      const auto scopes = resolve_scopes(tokens, cues, config);
      CHECK(scopes == detect(text, lex, config));
      std::vector<bool> cue_token(tokens.size(), false);
      for (const auto& c : cues) {
        if (c.category == CueCategory::Pseudo) continue;
        for (auto t = c.token_begin; t < c.token_end; ++t) cue_token[t] = true;
      }
      for (std::size_t s = 0; s < scopes.size(); ++s) {
        const auto& sc = scopes[s];
        INFO(text);
        CHECK(sc.span.valid());
        CHECK_FALSE(overlaps(sc.span, sc.cue.span));
        CHECK(sc.token_count() >= 1);
        CHECK(sc.token_count() <= config.window);
        CHECK(sc.cue.category != CueCategory::Pseudo);
        CHECK(sc.cue.category != CueCategory::Termination);
        CHECK(sc.span.start == tokens[sc.token_begin].span.start);
        CHECK(sc.span.end == tokens[sc.token_end - 1].span.end);
        for (auto t = sc.token_begin; t < sc.token_end; ++t) {
          CHECK_FALSE(cue_token[t]);
          CHECK_FALSE(is_breaker(tokens[t], config));
          if (t > sc.token_begin) CHECK_FALSE(tokens[t].after_newline);
        }
        if (sc.cue.category == CueCategory::Pre) {
          CHECK(sc.token_begin == sc.cue.token_end);
          CHECK_FALSE(tokens[sc.token_begin].after_newline);
        } else {
          CHECK(sc.token_end == sc.cue.token_begin);
          CHECK_FALSE(tokens[sc.token_end].after_newline);
        }
        if (s > 0) CHECK(scopes[s - 1].span.start <= sc.span.start);
      }
    }
  }

  TEST_CASE("adding a TERMINATION word never lengthens a scope") {
    Rng rng(22);
    const std::vector<std::string> candidates{"and", "feel", "this", "the", "pain", "I", "drug",
                                              "headache", "sleep", "crazy"};
    for (int i = 0; i < 1000; ++i) {
      const auto text = random_text(rng, 25);
      CueLexicon extended = default_lexicon();
      extended.add(rng.pick(candidates), CueCategory::Termination);
      const auto before = detect(text, default_lexicon());
      const auto after = detect(text, extended);
      for (const auto& a : after) {
        const auto same_cue = std::find_if(before.begin(), before.end(),
                                           [&](const auto& b) { return b.cue == a.cue; });
        REQUIRE(same_cue != before.end());
        CHECK(same_cue->span.start <= a.span.start);
        CHECK(a.span.end <= same_cue->span.end);
      }
      CHECK(after.size() <= before.size());
    }
  }
}
