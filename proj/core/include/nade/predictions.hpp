#ifndef NADE_PREDICTIONS_HPP_
#define NADE_PREDICTIONS_HPP_

// Standoff prediction files: the contract between any entity extractor or
// scope detector and this toolkit.
//
//   #model=BERT
//   #detector=NegEx        (optional)
//   #config=k50
//   #run=3
//   t1<TAB>17<TAB>30
//
// Offsets are code points, half-open.

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nade/span.hpp"

namespace nade {

struct PredictionSet {
  std::string model_id;
  std::optional<std::string> detector_id;
  std::string config_id;
  std::string run_id;
  std::map<std::string, std::vector<Span>> spans_by_sample;  // each list sorted, disjoint

  /// "BERT" or "BERT+NegEx".
  std::string label() const;
  std::size_t span_count() const;
  const std::vector<Span>& spans_for(const std::string& sample_id) const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

enum class OverlapPolicy { Reject, Merge };

/// Throws ValidationError (with the offending line number) on malformed
/// lines, unknown header keys, or overlapping spans under Reject.
PredictionSet load_predictions(std::istream& in, OverlapPolicy policy = OverlapPolicy::Reject);
PredictionSet load_predictions_file(const std::string& path,
                                    OverlapPolicy policy = OverlapPolicy::Reject);

/// Canonical form: header in fixed key order, samples by id, spans sorted.
void save_predictions(std::ostream& out, const PredictionSet& predictions);
void save_predictions_file(const std::string& path, const PredictionSet& predictions);

}  // namespace nade

#endif  // NADE_PREDICTIONS_HPP_
