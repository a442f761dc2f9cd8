// Acceptance suite: one PASS/FAIL line per primary criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"
#include "micro_corpus.hpp"
#include "nade/corpus.hpp"
#include "nade/experiment.hpp"
#include "nade/metrics.hpp"
#include "nade/pipeline.hpp"
#include "nade/predictions.hpp"
#include "nade/report.hpp"
#include "nade/review.hpp"
#include "review_session.hpp"
#include "sweep_fixture.hpp"
#include "test_support.hpp"

using namespace nade;
using namespace nade::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

bool shares_point(const Span& a, const Span& b) {
  for (auto p = a.start; p < a.end; ++p) {
    if (b.start <= p && p < b.end) return true;
  }
  return false;
}

Outcome pipeline_algebra() {
  Outcome o;
  const auto started = std::chrono::steady_clock::now();
  Rng rng(1001);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const auto entities = random_spans(rng, 8, 50);
    const auto scopes = random_spans(rng, 8, 50);
    const auto result = filter_entities(entities, scopes);
    std::vector<Span> oracle;
    for (const auto& b : entities) {
      bool blocked = false;
      for (const auto& n : scopes) blocked |= shares_point(b, n);
      if (!blocked) oracle.push_back(b);
    }
    o.require(result.kept == oracle, fmt::format("instance {}: kept differs from oracle", i));
    for (const auto& k : result.kept) {
      o.require(std::find(entities.begin(), entities.end(), k) != entities.end(),
                fmt::format("instance {}: kept is not a subset", i));
    }
    auto more = scopes;
    const auto extra = random_spans(rng, 3, 50);
    more.insert(more.end(), extra.begin(), extra.end());
    for (const auto& k : filter_entities(entities, more).kept) {
      o.require(std::find(result.kept.begin(), result.kept.end(), k) != result.kept.end(),
                fmt::format("instance {}: adding scopes grew kept", i));
    }
    o.require(filter_entities(result.kept, scopes).kept == result.kept,
              fmt::format("instance {}: not idempotent", i));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  o.require(seconds < 5.0, fmt::format("took {:.2f} s", seconds));
  if (o.pass) o.detail = fmt::format("1000 instances in {:.3f} s", seconds);
  return o;
}

Outcome negex_micro_corpus() {
  Outcome o;
  const auto cases = load_micro_corpus(data_path("negex_micro_corpus.tsv").string());
  o.require(cases.size() == 25, fmt::format("expected 25 sentences, found {}", cases.size()));
  std::size_t agree = 0, scopes = 0;
  for (const auto& c : cases) {
    const auto diff = compare_micro_case(c, detect(c.text, default_lexicon()));
    o.require(diff.empty(), diff);
    agree += diff.empty();
    scopes += c.expected.size();
  }
  if (o.pass) o.detail = fmt::format("{}/{} sentences, {} scopes exact", agree, cases.size(), scopes);
  return o;
}

Outcome metrics_oracle() {
  Outcome o;
  Rng rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const auto gold = random_disjoint_spans(rng, 6, 40);
    const auto pred = random_disjoint_spans(rng, 6, 40);
    MatchResult oracle;
    for (const auto& p : pred) {
      const bool hit = std::any_of(gold.begin(), gold.end(), [&](const Span& g) { return shares_point(p, g); });
      ++(hit ? oracle.tp_pred : oracle.fp);
    }
    for (const auto& g : gold) {
      const bool hit = std::any_of(pred.begin(), pred.end(), [&](const Span& p) { return shares_point(p, g); });
      ++(hit ? oracle.tp_gold : oracle.fn);
    }
    o.require(match_relaxed(gold, pred) == oracle, fmt::format("instance {} differs", i));
  }
  std::size_t tuples = 0;
  for (std::size_t a = 0; a <= 4; ++a) {
    for (std::size_t b = 0; b <= 4; ++b) {
      for (std::size_t c = 0; c <= 4; ++c) {
        for (std::size_t d = 0; d <= 4; ++d) {
          ++tuples;
          const auto s = score({a, b, c, d});
          const double p = a + b ? double(a) / double(a + b) : 0.0;
          const double r = c + d ? double(c) / double(c + d) : 0.0;
          const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
          o.require(std::fabs(s.precision - p) < 1e-12 && std::fabs(s.recall - r) < 1e-12 &&
                        std::fabs(s.f1 - f) < 1e-12,
                    fmt::format("score({},{},{},{}) wrong", a, b, c, d));
        }
      }
    }
  }
  if (o.pass) o.detail = fmt::format("1000 match instances, {} score tuples", tuples);
  return o;
}

Outcome reduction_arithmetic() {
  Outcome o;
  const auto negex = display_percent(reduction(161.2, 106.4));
  const auto bertneg = display_percent(reduction(161.2, 120.2));
  o.require(negex == 34, fmt::format("reduction(161.2, 106.4) -> {}%", negex));
  o.require(bertneg == 25, fmt::format("reduction(161.2, 120.2) -> {}%", bertneg));
  if (o.pass) o.detail = fmt::format("{}% and {}%", negex, bertneg);
  return o;
}

std::vector<EvalReport> load_records(const std::string& name) {
  std::istringstream in(read_file(data_path(name)));
  std::vector<EvalReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_record(line));
  }
  return out;
}

Outcome table_fixtures() {
  Outcome o;
  const auto fp = load_records("fixtures/table2_bert.records");
  const auto scores = load_records("fixtures/table3_bert.records");
  const std::pair<std::string, std::string> rendered[] = {
      {render_fp_table(fp, TableFormat::Tsv), "golden/table2_bert_fp.tsv"},
      {render_fp_table(fp, TableFormat::Markdown), "golden/table2_bert_fp.md"},
      {render_score_table(scores, TableFormat::Tsv), "golden/table3_bert_scores.tsv"},
      {render_score_table(scores, TableFormat::Markdown), "golden/table3_bert_scores.md"}};
  for (const auto& [text, golden] : rendered) {
    o.require(text == read_file(data_path(golden)), golden + " differs");
  }

  TempDir dir("accept-sweep");
  write_sweep_fixture(dir);
  std::ostringstream out, err;
  const int code = cli::run({"sweep", "--corpus", (dir / "corpus.jsonl").string(), "--predictions",
                             (dir / "preds" / "*.tsv").string(), "--k", "presets", "--out",
                             (dir / "out").string()},
                            out, err);
  o.require(code == 0, "sweep exited with " + std::to_string(code) + ": " + err.str());
  o.require(read_file(dir / "out" / "curve.tsv") == read_file(data_path("golden/figure_curve_bert.tsv")),
            "sweep curve differs from golden/figure_curve_bert.tsv");
  if (o.pass) o.detail = "4 golden tables and 24 curve points identical";
  return o;
}

Outcome toy_experiment() {
  Outcome o;
  const auto corpus = load_corpus_file(data_path("toy_corpus.jsonl").string());
  o.require(corpus.size() == 30, "toy corpus must hold 30 samples");
  const auto samples = corpus.evaluation_samples();
  const auto base = load_predictions_file(data_path("toy_predictions.tsv").string());
  const auto piped = apply_pipeline(base, samples, NegexDetector{});
  o.require(piped.errors.empty(), "pipeline reported unknown samples");
  for (const auto& [id, spans] : piped.predictions.spans_by_sample) {
    const auto& original = base.spans_for(id);
    for (const auto& s : spans) {
      o.require(std::find(original.begin(), original.end(), s) != original.end(),
                "kept entity " + to_string(s) + " of " + id + " is not a base prediction");
    }
  }
  const auto before = evaluate(base, samples);
  const auto after = evaluate(piped.predictions, samples);
  o.require(after.fp(FpBucket::NegADE) < before.fp(FpBucket::NegADE), "negADE FP did not decrease");
  o.require(after.recall <= before.recall, "recall increased");
  if (o.pass) {
    o.detail = fmt::format("negADE FP {:.0f} -> {:.0f}, recall {:.2f} -> {:.2f}", before.fp(FpBucket::NegADE),
                           after.fp(FpBucket::NegADE), before.recall, after.recall);
  }
  return o;
}

Outcome corpus_round_trips() {
  Outcome o;
  auto save = [](const Corpus& c) {
    std::ostringstream out;
    save_corpus(out, c);
    return out.str();
  };
  const auto first = save(load_corpus_file(data_path("toy_corpus.jsonl").string()));
  std::istringstream in(first);
  o.require(save(load_corpus(in)) == first, "load -> save -> load is not canonical");

  Corpus sweep;
  for (int i = 0; i < 253; ++i) {
    Sample s{fmt::format("g{:03}", (i * 101) % 253), "never had a rash", Category::NegADE_G, {}, std::string("a0")};
    sweep.add(std::move(s), Split::Train);
  }
  sweep.add(Sample{"a0", "it gave me a rash", Category::ADE, {{12, 16}}, std::nullopt}, Split::Train);
  std::size_t pairs = 0;
  for (auto k1 : kSweepPresets) {
    for (auto k2 : kSweepPresets) {
      if (k1 >= k2) continue;
      ++pairs;
      const auto small = build_config(sweep, k1).included_ids;
      const auto large = build_config(sweep, k2).included_ids;
      o.require(small.size() == k1 && large.size() == k2 && std::equal(small.begin(), small.end(), large.begin()),
                fmt::format("prefix property fails for k={} and k={}", k1, k2));
    }
  }

  const auto appendix = load_corpus_file(data_path("appendix_a.jsonl").string()).samples();
  const auto kept = cue_filter(appendix, default_lexicon());
  o.require(kept.size() == 4, fmt::format("cue_filter kept {} of 4 example tweets", kept.size()));
  const auto again = cue_filter(kept, default_lexicon());
  o.require(again.size() == kept.size() &&
                std::equal(again.begin(), again.end(), kept.begin(),
                           [](const Sample& a, const Sample& b) { return a.id == b.id; }),
            "cue_filter is not idempotent");
  if (o.pass) o.detail = fmt::format("canonical round trip, {} prefix pairs, 4/4 tweets kept", pairs);
  return o;
}

Outcome review_replay() {
  Outcome o;
  review::ReviewStore live(session_tasks(), kAnnotators);
  std::ostringstream log;
  live.attach_log(&log);
  run_session(live);
  for (const auto& [task, expected] : session_expected()) {
    o.require(live.agreement(task).resolution == expected,
              fmt::format("task {} resolved {}", task, review::to_string(live.agreement(task).resolution)));
  }
  for (const auto& [annotator, task_id] : live.served()) {
    for (const auto& t : session_tasks()) {
      o.require(!(t.task_id == task_id && t.author == annotator), "author served own task");
    }
  }

  review::ReviewStore replayed(session_tasks(), kAnnotators);
  std::istringstream in(log.str());
  replayed.replay(in);
  o.require(replayed.report() == live.report(), "replayed agreement report differs");
  for (const auto& [task, _] : session_expected()) {
    o.require(replayed.agreement(task) == live.agreement(task), fmt::format("replayed task {} differs", task));
  }
  for (const auto flow : {review::Flow::Recovery, review::Flow::Generation}) {
    o.require(replayed.export_accepted(flow) == live.export_accepted(flow), "replayed export differs");
  }

  std::istringstream gen(replayed.export_accepted(review::Flow::Generation));
  const auto generated = load_corpus(gen);
  o.require(generated.size() == 2, "expected two accepted generation tasks");
  for (const auto& s : generated.samples()) {
    o.require(s.category == Category::NegADE_G, s.id + " is not negADE_G");
    o.require(generated.split_of(s.id) == Split::Train, s.id + " is not in the train split");
  }
  const auto* g = generated.find("g_r01");
  o.require(g && g->origin_id == "r01", "g_r01 lacks origin r01");
  const auto* h = generated.find("r04_neg");
  o.require(h && h->origin_id == "r04", "r04_neg lacks origin r04");
  if (o.pass) {
    const auto r = live.report();
    o.detail = fmt::format("{} decisions; recovery {}/{}/{}, generation {}/{}/{} (accept/reject/discard)",
                           live.decisions().size(), r.recovery.accepted, r.recovery.rejected, r.recovery.discarded,
                           r.generation.accepted, r.generation.rejected, r.generation.discarded);
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"pipeline algebra", pipeline_algebra},
      {"negex micro-corpus", negex_micro_corpus},
      {"metrics oracle equivalence", metrics_oracle},
      {"reference reduction arithmetic", reduction_arithmetic},
      {"table fixtures and sweep curve", table_fixtures},
      {"end-to-end toy experiment", toy_experiment},
      {"corpus round trips", corpus_round_trips},
      {"review replay", review_replay},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail << ")\n";
  }
  std::cout << fmt::format("{} of {} criteria passed\n", std::size(criteria) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
