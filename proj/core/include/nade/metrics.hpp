#ifndef NADE_METRICS_HPP_
#define NADE_METRICS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nade/predictions.hpp"
#include "nade/sample.hpp"

namespace nade {

/// Predicted and gold spans are counted independently:
/// tp_pred + fp == #predictions, tp_gold + fn == #gold.
struct MatchResult {
  std::size_t tp_pred = 0;
  std::size_t fp = 0;
  std::size_t tp_gold = 0;
  std::size_t fn = 0;

  MatchResult& operator+=(const MatchResult& o);
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

enum class MatchMode {
  Relaxed,  // any shared character counts as a hit
  Strict,   // exact boundaries only (diagnostics)
};

std::string_view to_string(MatchMode mode);
std::optional<MatchMode> parse_match_mode(std::string_view name);

/// Throws ValidationError if either list contains overlapping spans.
MatchResult match_relaxed(std::span<const Span> gold, std::span<const Span> pred);
MatchResult match_strict(std::span<const Span> gold, std::span<const Span> pred);
MatchResult match(std::span<const Span> gold, std::span<const Span> pred, MatchMode mode);

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Zero denominators yield 0 rather than NaN.
Scores score(const MatchResult& m);

/// Indexed by FpBucket.
using FpCounts = std::array<double, 3>;

inline double& at(FpCounts& c, FpBucket b) { return c[static_cast<std::size_t>(b)]; }
inline double at(const FpCounts& c, FpBucket b) { return c[static_cast<std::size_t>(b)]; }

/// Per-category false positives. On empty-gold samples every prediction is
/// a false positive. Throws ValidationError for an unknown sample id.
FpCounts fp_by_category(const PredictionSet& predictions, std::span<const Sample> samples,
                        MatchMode mode = MatchMode::Relaxed);

/// 100 * (base - new) / base. Throws ValidationError when base <= 0.
double reduction(double base_fp, double new_fp);
/// Nearest integer percent, e.g. 33.99 -> 34.
long display_percent(double percent);

/// Scores are ratios in [0, 1]; FP figures are counts (means over runs).
struct EvalReport {
  std::string model_id;  // variant label, e.g. "BERT+NegEx"
  std::string config_id;
  MatchMode mode = MatchMode::Relaxed;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fp_total = 0.0;
  FpCounts fp_by_category{};
  std::size_t runs = 1;

  double fp(FpBucket b) const { return at(fp_by_category, b); }
};

/// Micro-averaged evaluation of one run over `samples` (the evaluation
/// set). Samples without predictions contribute their gold spans as misses.
EvalReport evaluate(const PredictionSet& predictions, std::span<const Sample> samples,
                    MatchMode mode = MatchMode::Relaxed);

/// Arithmetic mean of every numeric field; runs = number of reports.
/// Throws ValidationError on an empty list or mixed model/config/mode.
EvalReport aggregate_runs(std::span<const EvalReport> reports);

/// Flat `key=value` record, tab separated, one line, full precision.
std::string to_record(const EvalReport& report);
EvalReport parse_record(std::string_view line);

}  // namespace nade

#endif  // NADE_METRICS_HPP_
