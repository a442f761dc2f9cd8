#ifndef NADE_EXPERIMENT_HPP_
#define NADE_EXPERIMENT_HPP_

// Experiment orchestration behind the `eval` and `sweep` commands. Models are
// never trained here: every (model, config, run) is one prediction file, and
// each detector variant is applied on top of it before scoring.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nade/corpus.hpp"
#include "nade/metrics.hpp"
#include "nade/negex.hpp"
#include "nade/report.hpp"

namespace nade {

struct DetectorChoice {
  enum class Kind { None, Negex, File };
  Kind kind = Kind::None;
  std::string path;  // Kind::File only

  /// "none", "negex" or "file:PATH".
  static DetectorChoice parse(std::string_view text);
  friend bool operator==(const DetectorChoice&, const DetectorChoice&) = default;
};

struct ExperimentSpec {
  std::string corpus_path;
  std::vector<std::string> prediction_paths;  // already glob-expanded
  std::vector<DetectorChoice> detectors{DetectorChoice{}};
  std::optional<std::string> lexicon_path;    // default lexicon when unset
  NegexConfig negex;
  MatchMode mode = MatchMode::Relaxed;
  std::vector<std::size_t> ks;                // sweep: expected k values
};

struct ReportBundle {
  std::vector<EvalReport> reports;  // aggregated, one per (variant, config)
  std::vector<EvalReport> runs;     // per-run reports in the same order
  std::vector<CurvePoint> curve;    // sweep only
  std::vector<std::string> warnings;
};

/// Expands shell-style patterns; a pattern without wildcards must name an
/// existing file. Throws IoError when nothing matches.
std::vector<std::string> expand_globs(const std::vector<std::string>& patterns);

/// Throws ValidationError (bad inputs) or IoError (unreadable files).
ReportBundle run_eval(const ExperimentSpec& spec);

/// run_eval restricted to k-encoded configs, plus FP-vs-k curves. Missing
/// k values listed in spec.ks are reported as warnings, not errors.
ReportBundle run_sweep(const ExperimentSpec& spec);

/// Writes reports.txt, fp_table.*, scores_table.* and, when the bundle has
/// curve data, curve.tsv and curve.svg into `out_dir` (created if needed).
void write_bundle(const ReportBundle& bundle, const std::string& out_dir, TableFormat format);

}  // namespace nade

#endif  // NADE_EXPERIMENT_HPP_
