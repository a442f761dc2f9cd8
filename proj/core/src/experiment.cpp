#include "nade/experiment.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "nade/error.hpp"
#include "nade/pipeline.hpp"

namespace nade {

namespace fs = std::filesystem;

DetectorChoice DetectorChoice::parse(std::string_view text) {
  if (text == "none") return {Kind::None, {}};
  if (text == "negex") return {Kind::Negex, {}};
  if (text.starts_with("file:") && text.size() > 5) {
    return {Kind::File, std::string(text.substr(5))};
  }
  throw ValidationError(
      fmt::format("unknown detector '{}' (expected none, negex or file:PATH)", text));
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> paths;
  for (const auto& pattern : patterns) {
    if (pattern.find_first_of("*?[") == std::string::npos) {
      if (!fs::is_regular_file(pattern)) throw IoError(fmt::format("no such file '{}'", pattern));
      paths.push_back(pattern);
      continue;
    }
    glob_t result{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &result);
    if (rc == 0) {
      for (std::size_t i = 0; i < result.gl_pathc; ++i) paths.emplace_back(result.gl_pathv[i]);
    }
    ::globfree(&result);
    if (rc != 0) throw IoError(fmt::format("no files match '{}'", pattern));
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

namespace {

struct Variant {
  std::optional<ScopeSource> source;
};

// Configs order by k when they encode one, then lexicographically.
bool config_less(const std::string& a, const std::string& b) {
  const auto ka = k_from_config_id(a);
  const auto kb = k_from_config_id(b);
  if (ka && kb) return *ka < *kb;
  if (ka != kb) return ka.has_value();
  return a < b;
}

std::vector<Variant> build_variants(const ExperimentSpec& spec, const CueLexicon& lexicon,
                                    const Corpus& corpus) {
  std::vector<Variant> variants;
  for (const auto& choice : spec.detectors) {
    switch (choice.kind) {
      case DetectorChoice::Kind::None:
        variants.push_back({std::nullopt});
        break;
      case DetectorChoice::Kind::Negex:
        variants.push_back({NegexDetector{&lexicon, spec.negex, "NegEx"}});
        break;
      case DetectorChoice::Kind::File: {
        auto scopes = load_predictions_file(choice.path, OverlapPolicy::Merge);
        for (const auto& [id, _] : scopes.spans_by_sample) {
          if (!corpus.find(id)) {
            throw ValidationError(
                fmt::format("{}: scope for unknown sample id '{}'", choice.path, id));
          }
        }
        std::string id = scopes.model_id.empty() ? fs::path(choice.path).stem().string()
                                                 : scopes.model_id;
        variants.push_back({ScopeFileDetector{std::move(scopes), std::move(id)}});
        break;
      }
    }
  }
  return variants;
}

}  // namespace

ReportBundle run_eval(const ExperimentSpec& spec) {
  spec.negex.validate();
  if (spec.prediction_paths.empty()) throw ValidationError("no prediction files given");
  if (spec.detectors.empty()) throw ValidationError("no detector variants given");

  const Corpus corpus = load_corpus_file(spec.corpus_path);
  const auto samples = corpus.evaluation_samples();
  const CueLexicon lexicon =
      spec.lexicon_path ? load_lexicon_file(*spec.lexicon_path) : default_lexicon();
  const auto variants = build_variants(spec, lexicon, corpus);

  // (model, config) -> run id -> predictions
  std::map<std::pair<std::string, std::string>, std::map<std::string, PredictionSet>> groups;
  std::map<std::tuple<std::string, std::string, std::string>, std::string> origin;
  for (const auto& path : spec.prediction_paths) {
    auto set = load_predictions_file(path);
    if (set.model_id.empty()) throw ValidationError(fmt::format("{}: missing #model header", path));
    const auto key = std::make_tuple(set.model_id, set.config_id, set.run_id);
    if (const auto it = origin.find(key); it != origin.end()) {
      throw ValidationError(fmt::format("run model={} config={} run={} declared by both {} and {}",
                                        set.model_id, set.config_id, set.run_id, it->second, path));
    }
    origin.emplace(key, path);
    if (set.detector_id) {
      const bool stacked = std::any_of(variants.begin(), variants.end(),
                                       [](const Variant& v) { return v.source.has_value(); });
      if (stacked) {
        throw ValidationError(fmt::format(
            "{}: predictions already carry detector '{}'; only --detector none applies", path,
            *set.detector_id));
      }
    }
    auto group_key = std::make_pair(set.model_id, set.config_id);
    groups[group_key].emplace(set.run_id, std::move(set));
  }

  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& [key, _] : groups) keys.push_back(key);
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return config_less(a.second, b.second);
  });

  ReportBundle bundle;
  for (const auto& key : keys) {
    const auto& runs = groups.at(key);
    for (const auto& variant : variants) {
      std::vector<EvalReport> per_run;
      for (const auto& [run_id, predictions] : runs) {
        PredictionSet effective = predictions;
        if (variant.source) {
          auto out = apply_pipeline(predictions, samples, *variant.source);
          if (!out.errors.empty()) {
            throw ValidationError(fmt::format("{} run {}: {}", predictions.label(), run_id,
                                              out.errors.front()));
          }
          effective = std::move(out.predictions);
        }
        per_run.push_back(evaluate(effective, samples, spec.mode));
      }
      bundle.runs.insert(bundle.runs.end(), per_run.begin(), per_run.end());
      bundle.reports.push_back(aggregate_runs(per_run));
    }
  }
  return bundle;
}

ReportBundle run_sweep(const ExperimentSpec& spec) {
  ReportBundle bundle = run_eval(spec);
  for (const auto& r : bundle.reports) {
    if (!k_from_config_id(r.config_id)) {
      throw ValidationError(fmt::format(
          "sweep: config '{}' of {} is not a dataset config id (expected k<N>)", r.config_id,
          r.model_id));
    }
  }
  if (!spec.ks.empty()) {
    const auto wanted = [&](const EvalReport& r) {
      return std::find(spec.ks.begin(), spec.ks.end(), *k_from_config_id(r.config_id)) !=
             spec.ks.end();
    };
    std::erase_if(bundle.reports, [&](const EvalReport& r) { return !wanted(r); });
    std::erase_if(bundle.runs, [&](const EvalReport& r) { return !wanted(r); });

    std::vector<std::string> series;
    for (const auto& r : bundle.reports) {
      if (std::find(series.begin(), series.end(), r.model_id) == series.end()) {
        series.push_back(r.model_id);
      }
    }
    for (const auto& s : series) {
      for (const auto k : spec.ks) {
        const bool present = std::any_of(bundle.reports.begin(), bundle.reports.end(),
                                         [&](const EvalReport& r) {
                                           return r.model_id == s &&
                                                  k_from_config_id(r.config_id) == k;
                                         });
        if (!present) bundle.warnings.push_back(fmt::format("{}: no predictions for k={}", s, k));
      }
    }
  }
  bundle.curve = build_curves(bundle.reports);
  return bundle;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

void write_bundle(const ReportBundle& bundle, const std::string& out_dir, TableFormat format) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", out_dir, ec.message()));
  const fs::path dir(out_dir);
  const auto ext = std::string(file_extension(format));
  write_text(dir / "reports.txt", render_records(bundle.reports));
  write_text(dir / "runs.txt", render_records(bundle.runs));
  write_text(dir / ("fp_table." + ext), render_fp_table(bundle.reports, format));
  write_text(dir / ("scores_table." + ext), render_score_table(bundle.reports, format));
  if (!bundle.curve.empty()) {
    write_text(dir / "curve.tsv", render_curve_tsv(bundle.curve));
    write_text(dir / "curve.svg", render_curve_svg(bundle.curve));
  }
  if (!bundle.warnings.empty()) {
    std::string text;
    for (const auto& w : bundle.warnings) text += w + '\n';
    write_text(dir / "warnings.txt", text);
  }
}

}  // namespace nade
