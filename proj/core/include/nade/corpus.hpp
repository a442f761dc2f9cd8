#ifndef NADE_CORPUS_HPP_
#define NADE_CORPUS_HPP_

// Corpus files are newline-delimited JSON, one sample per line:
//
//   {"id":"t1","text":"...","category":"ADE","gold":[[17,30]],"split":"test"}
//
// "gold", "origin_id" and "split" are optional. Offsets are code points.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nade/negex.hpp"
#include "nade/sample.hpp"

namespace nade {

enum class Split { Train, Test };

std::string_view to_string(Split s);
std::optional<Split> parse_split(std::string_view name);

class Corpus {
 public:
  Corpus() = default;

  /// Validates the sample and its split assignment. negADE_R may only go to
  /// test and negADE_G only to train. Throws ValidationError on duplicates.
  void add(Sample sample, std::optional<Split> split = std::nullopt);

  /// Samples ordered by id.
  const std::vector<Sample>& samples() const { return samples_; }
  const Sample* find(const std::string& id) const;
  std::optional<Split> split_of(const std::string& id) const;
  const std::map<std::string, Split>& partition() const { return partition_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  /// Samples assigned to `split`, in id order.
  std::vector<Sample> samples_in(Split split) const;

  /// The evaluation set: the test split when any sample is partitioned,
  /// otherwise every sample.
  std::vector<Sample> evaluation_samples() const;

 private:
  std::vector<Sample> samples_;
  std::map<std::string, Split> partition_;
};

Corpus load_corpus(std::istream& in);
Corpus load_corpus_file(const std::string& path);

/// Canonical serialization: id order, fixed key order, gold sorted.
void save_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus_file(const std::string& path, const Corpus& corpus);

/// Samples whose text contains at least one PRE or POST cue. Order kept.
std::vector<Sample> cue_filter(std::span<const Sample> samples, const CueLexicon& lexicon);

struct DatasetConfig {
  std::string id;                          // "k50"
  std::size_t k = 0;                       // negADE_G samples included
  std::vector<std::string> base_ids;       // ADE/noADE training samples
  std::vector<std::string> included_ids;   // first k negADE_G ids

  /// base_ids followed by included_ids.
  std::vector<std::string> training_ids() const;
};

inline constexpr std::size_t kSweepPresets[] = {0, 50, 100, 150, 200, 253};

std::string config_id_for(std::size_t k);
/// Inverse of config_id_for ("k50" -> 50).
std::optional<std::size_t> k_from_config_id(std::string_view id);

/// Picks the first k negADE_G samples in lexicographic id order, or in a
/// seeded shuffle order when `shuffle_seed` is set. Throws ValidationError
/// when k exceeds the available negADE_G count.
DatasetConfig build_config(const Corpus& corpus, std::size_t k,
                           std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct PartitionSummary {
  struct Row {
    std::string name;  // train, test, unassigned
    std::array<std::size_t, 3> counts{};  // indexed by FpBucket
    std::size_t total() const { return counts[0] + counts[1] + counts[2]; }
  };
  std::vector<Row> rows;  // train, test, and unassigned when non-empty

  const Row* row(std::string_view name) const;
  std::size_t count(std::string_view row_name, FpBucket bucket) const;
  /// negADE share of the test split in percent (0 when test is empty).
  double test_negade_share() const;
};

PartitionSummary partition_summary(const Corpus& corpus);
std::string render_partition_summary(const PartitionSummary& summary);

enum class AugmentationStatus { Proposed, Approved, Discarded };
std::string_view to_string(AugmentationStatus s);

/// Provenance of one generated negated sample.
struct AugmentationRecord {
  std::string original_id;
  std::string generated_id;
  std::string edit_note;
  AugmentationStatus status = AugmentationStatus::Proposed;
};

}  // namespace nade

#endif  // NADE_CORPUS_HPP_
