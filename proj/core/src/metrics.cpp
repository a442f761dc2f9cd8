#include "nade/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "nade/error.hpp"

namespace nade {

MatchResult& MatchResult::operator+=(const MatchResult& o) {
  tp_pred += o.tp_pred;
  fp += o.fp;
  tp_gold += o.tp_gold;
  fn += o.fn;
  return *this;
}

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::Relaxed ? "relaxed" : "strict";
}

std::optional<MatchMode> parse_match_mode(std::string_view name) {
  if (name == "relaxed") return MatchMode::Relaxed;
  if (name == "strict") return MatchMode::Strict;
  return std::nullopt;
}

namespace {

// `sorted` is disjoint, so ends are increasing: the first span ending after
// probe.start is the only candidate that needs checking.
bool hits_any(std::span<const Span> sorted, const Span& probe) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), probe.start,
                                   [](std::size_t pos, const Span& s) { return pos < s.end; });
  return it != sorted.end() && it->start < probe.end;
}

bool equals_any(std::span<const Span> sorted, const Span& probe) {
  return std::binary_search(sorted.begin(), sorted.end(), probe);
}

}  // namespace

MatchResult match_relaxed(std::span<const Span> gold, std::span<const Span> pred) {
  const auto g = require_disjoint(gold, "gold spans");
  const auto p = require_disjoint(pred, "predicted spans");
  MatchResult m;
  for (const auto& s : p) (hits_any(g, s) ? m.tp_pred : m.fp) += 1;
  for (const auto& s : g) (hits_any(p, s) ? m.tp_gold : m.fn) += 1;
  return m;
}

MatchResult match_strict(std::span<const Span> gold, std::span<const Span> pred) {
  const auto g = require_disjoint(gold, "gold spans");
  const auto p = require_disjoint(pred, "predicted spans");
  MatchResult m;
  for (const auto& s : p) (equals_any(g, s) ? m.tp_pred : m.fp) += 1;
  for (const auto& s : g) (equals_any(p, s) ? m.tp_gold : m.fn) += 1;
  return m;
}

MatchResult match(std::span<const Span> gold, std::span<const Span> pred, MatchMode mode) {
  return mode == MatchMode::Relaxed ? match_relaxed(gold, pred) : match_strict(gold, pred);
}

Scores score(const MatchResult& m) {
  Scores s;
  const auto predicted = m.tp_pred + m.fp;
  const auto actual = m.tp_gold + m.fn;
  if (predicted > 0) s.precision = static_cast<double>(m.tp_pred) / static_cast<double>(predicted);
  if (actual > 0) s.recall = static_cast<double>(m.tp_gold) / static_cast<double>(actual);
  if (s.precision + s.recall > 0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

FpCounts fp_by_category(const PredictionSet& predictions, std::span<const Sample> samples,
                        MatchMode mode) {
  std::map<std::string_view, const Sample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);
  FpCounts counts{};
  for (const auto& [id, spans] : predictions.spans_by_sample) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw ValidationError(fmt::format("prediction for unknown sample id '{}'", id));
    }
    const auto m = match(it->second->gold_spans, spans, mode);
    at(counts, bucket_of(it->second->category)) += static_cast<double>(m.fp);
  }
  return counts;
}

double reduction(double base_fp, double new_fp) {
  if (!(base_fp > 0.0)) {
    throw ValidationError(fmt::format("reduction needs a positive base FP count, got {}", base_fp));
  }
  return 100.0 * (base_fp - new_fp) / base_fp;
}

long display_percent(double percent) { return std::lround(percent); }

EvalReport evaluate(const PredictionSet& predictions, std::span<const Sample> samples,
                    MatchMode mode) {
  std::map<std::string_view, const Sample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);
  for (const auto& [id, _] : predictions.spans_by_sample) {
    if (!by_id.contains(id)) {
      throw ValidationError(
          fmt::format("{}: prediction for sample '{}' outside the evaluation set",
                      predictions.label(), id));
    }
  }
  EvalReport report;
  report.model_id = predictions.label();
  report.config_id = predictions.config_id;
  report.mode = mode;
  MatchResult total;
  for (const auto& s : samples) {
    const auto m = match(s.gold_spans, predictions.spans_for(s.id), mode);
    total += m;
    at(report.fp_by_category, bucket_of(s.category)) += static_cast<double>(m.fp);
  }
  const auto scores = score(total);
  report.precision = scores.precision;
  report.recall = scores.recall;
  report.f1 = scores.f1;
  report.fp_total = static_cast<double>(total.fp);
  report.runs = 1;
  return report;
}

EvalReport aggregate_runs(std::span<const EvalReport> reports) {
  if (reports.empty()) throw ValidationError("cannot aggregate an empty list of reports");
  const auto& first = reports.front();
  EvalReport mean;
  mean.model_id = first.model_id;
  mean.config_id = first.config_id;
  mean.mode = first.mode;
  for (const auto& r : reports) {
    if (r.model_id != first.model_id || r.config_id != first.config_id || r.mode != first.mode) {
      throw ValidationError(fmt::format("cannot aggregate {}/{} with {}/{}", first.model_id,
                                        first.config_id, r.model_id, r.config_id));
    }
    mean.precision += r.precision;
    mean.recall += r.recall;
    mean.f1 += r.f1;
    mean.fp_total += r.fp_total;
    for (std::size_t i = 0; i < mean.fp_by_category.size(); ++i) {
      mean.fp_by_category[i] += r.fp_by_category[i];
    }
  }
  const double n = static_cast<double>(reports.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  mean.fp_total /= n;
  for (auto& v : mean.fp_by_category) v /= n;
  mean.runs = reports.size();
  return mean;
}

std::string to_record(const EvalReport& r) {
  return fmt::format(
      "model={}\tconfig={}\tmode={}\truns={}\tprecision={:.17g}\trecall={:.17g}\tf1={:.17g}\t"
      "fp_total={:.17g}\tfp_ADE={:.17g}\tfp_noADE={:.17g}\tfp_negADE={:.17g}",
      r.model_id, r.config_id, to_string(r.mode), r.runs, r.precision, r.recall, r.f1,
      r.fp_total, r.fp(FpBucket::ADE), r.fp(FpBucket::NoADE), r.fp(FpBucket::NegADE));
}

namespace {

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string s(value);
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("record field '{}': bad number '{}'", key, value));
  }
}

}  // namespace

EvalReport parse_record(std::string_view line) {
  EvalReport r;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) tab = line.size();
    const auto field = line.substr(pos, tab - pos);
    pos = tab + 1;
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(fmt::format("record field '{}' lacks '='", field));
    }
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "model") {
      r.model_id = value;
    } else if (key == "config") {
      r.config_id = value;
    } else if (key == "mode") {
      const auto mode = parse_match_mode(value);
      if (!mode) throw ValidationError(fmt::format("unknown match mode '{}'", value));
      r.mode = *mode;
    } else if (key == "runs") {
      r.runs = static_cast<std::size_t>(parse_double(key, value));
    } else if (key == "precision") {
      r.precision = parse_double(key, value);
    } else if (key == "recall") {
      r.recall = parse_double(key, value);
    } else if (key == "f1") {
      r.f1 = parse_double(key, value);
    } else if (key == "fp_total") {
      r.fp_total = parse_double(key, value);
    } else if (key == "fp_ADE") {
      at(r.fp_by_category, FpBucket::ADE) = parse_double(key, value);
    } else if (key == "fp_noADE") {
      at(r.fp_by_category, FpBucket::NoADE) = parse_double(key, value);
    } else if (key == "fp_negADE") {
      at(r.fp_by_category, FpBucket::NegADE) = parse_double(key, value);
    } else {
      throw ValidationError(fmt::format("unknown record field '{}'", key));
    }
  }
  return r;
}

}  // namespace nade
