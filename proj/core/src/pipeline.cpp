#include "nade/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nade {

PipelineResult filter_entities(std::span<const Span> entities, std::span<const Span> scopes) {
  const auto sorted = sorted_spans(scopes);
  PipelineResult result;
  for (const auto& entity : entities) {
    const auto blocker = std::find_if(sorted.begin(), sorted.end(),
                                      [&](const Span& s) { return overlaps(entity, s); });
    if (blocker == sorted.end()) {
      result.kept.push_back(entity);
    } else {
      result.discarded.push_back(DiscardedEntity{entity, *blocker});
    }
  }
  return result;
}

std::string detector_id(const ScopeSource& source) {
  return std::visit([](const auto& d) { return d.id; }, source);
}

std::vector<Span> scopes_for(const ScopeSource& source, const Sample& sample) {
  if (const auto* negex = std::get_if<NegexDetector>(&source)) {
    std::vector<Span> spans;
    for (const auto& scope : detect(sample.text, *negex->lexicon, negex->config)) {
      spans.push_back(scope.span);
    }
    return spans;
  }
  return std::get<ScopeFileDetector>(source).scopes.spans_for(sample.id);
}

PipelineOutput apply_pipeline(const PredictionSet& predictions, std::span<const Sample> samples,
                              const ScopeSource& source) {
  std::map<std::string, const Sample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);

  PipelineOutput out;
  out.predictions.model_id = predictions.model_id;
  out.predictions.detector_id = detector_id(source);
  out.predictions.config_id = predictions.config_id;
  out.predictions.run_id = predictions.run_id;

  for (const auto& [id, entities] : predictions.spans_by_sample) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      out.errors.push_back(fmt::format("unknown sample id '{}'", id));
      continue;
    }
    auto result = filter_entities(entities, scopes_for(source, *it->second));
    if (!result.kept.empty()) out.predictions.spans_by_sample[id] = std::move(result.kept);
    if (!result.discarded.empty()) out.discarded[id] = std::move(result.discarded);
  }
  return out;
}

PredictionSet export_scopes(std::span<const Sample> samples, const NegexDetector& detector) {
  PredictionSet set;
  set.model_id = detector.id;
  for (const auto& s : samples) {
    auto spans = merge_overlapping(scopes_for(ScopeSource{detector}, s));
    if (!spans.empty()) set.spans_by_sample[s.id] = std::move(spans);
  }
  return set;
}

}  // namespace nade
