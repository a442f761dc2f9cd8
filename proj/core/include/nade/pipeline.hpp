#ifndef NADE_PIPELINE_HPP_
#define NADE_PIPELINE_HPP_

// Pipeline model: an entity extractor's spans are kept only if they share no
// character with any negation scope reported for the same text.

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nade/negex.hpp"
#include "nade/predictions.hpp"
#include "nade/sample.hpp"

namespace nade {

struct DiscardedEntity {
  Span entity;
  Span blocking_scope;  // lowest-start scope overlapping the entity

  friend bool operator==(const DiscardedEntity&, const DiscardedEntity&) = default;
};

struct PipelineResult {
  std::vector<Span> kept;  // input order preserved
  std::vector<DiscardedEntity> discarded;
};

PipelineResult filter_entities(std::span<const Span> entities, std::span<const Span> scopes);

/// Live rule-based detector.
struct NegexDetector {
  const CueLexicon* lexicon = &default_lexicon();
  NegexConfig config;
  std::string id = "NegEx";
};

/// Scopes read from a prediction file (e.g. a learned scope model's output).
/// The detector id defaults to the file's model id.
struct ScopeFileDetector {
  PredictionSet scopes;
  std::string id;
};

using ScopeSource = std::variant<NegexDetector, ScopeFileDetector>;

std::string detector_id(const ScopeSource& source);

/// Scopes of one text as plain spans.
std::vector<Span> scopes_for(const ScopeSource& source, const Sample& sample);

struct PipelineOutput {
  PredictionSet predictions;  // detector_id set to the source's id
  std::map<std::string, std::vector<DiscardedEntity>> discarded;
  std::vector<std::string> errors;  // one message per unknown sample id
};

/// Filters every sample's predicted entities. Unknown sample ids are
/// reported in `errors` and dropped; remaining samples are still processed.
PipelineOutput apply_pipeline(const PredictionSet& predictions, std::span<const Sample> samples,
                              const ScopeSource& source);

/// Runs the negex detector over the samples and packs the scopes into a
/// PredictionSet (overlapping scopes of one text are merged), suitable for
/// writing as a scope file.
PredictionSet export_scopes(std::span<const Sample> samples, const NegexDetector& detector);

}  // namespace nade

#endif  // NADE_PIPELINE_HPP_
