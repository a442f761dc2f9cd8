#include "nade/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "nade/error.hpp"

namespace nade {

using json = nlohmann::json;

std::string_view to_string(Split s) { return s == Split::Train ? "train" : "test"; }

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "test") return Split::Test;
  return std::nullopt;
}

void Corpus::add(Sample sample, std::optional<Split> split) {
  validate_sample(sample);
  const auto pos = std::lower_bound(samples_.begin(), samples_.end(), sample.id,
                                    [](const Sample& s, const std::string& id) { return s.id < id; });
  if (pos != samples_.end() && pos->id == sample.id) {
    throw ValidationError(fmt::format("duplicate sample id '{}'", sample.id));
  }
  if (split) {
    if (sample.category == Category::NegADE_R && *split != Split::Test) {
      throw ValidationError(fmt::format("sample '{}': negADE_R samples belong to test", sample.id));
    }
    if (sample.category == Category::NegADE_G && *split != Split::Train) {
      throw ValidationError(fmt::format("sample '{}': negADE_G samples belong to train", sample.id));
    }
    partition_[sample.id] = *split;
  }
  samples_.insert(pos, std::move(sample));
}

const Sample* Corpus::find(const std::string& id) const {
  const auto pos = std::lower_bound(samples_.begin(), samples_.end(), id,
                                    [](const Sample& s, const std::string& key) { return s.id < key; });
  return (pos != samples_.end() && pos->id == id) ? &*pos : nullptr;
}

std::optional<Split> Corpus::split_of(const std::string& id) const {
  const auto it = partition_.find(id);
  if (it == partition_.end()) return std::nullopt;
  return it->second;
}

std::vector<Sample> Corpus::samples_in(Split split) const {
  std::vector<Sample> out;
  for (const auto& s : samples_) {
    if (split_of(s.id) == split) out.push_back(s);
  }
  return out;
}

std::vector<Sample> Corpus::evaluation_samples() const {
  return partition_.empty() ? samples_ : samples_in(Split::Test);
}

namespace {

Sample sample_from_json(const json& record, std::optional<Split>& split) {
  if (!record.is_object()) throw ValidationError("record is not a JSON object");
  for (const auto& key : {"id", "text", "category"}) {
    if (!record.contains(key) || !record.at(key).is_string()) {
      throw ValidationError(fmt::format("missing or non-string field '{}'", key));
    }
  }
  Sample s;
  s.id = record.at("id").get<std::string>();
  s.text = record.at("text").get<std::string>();
  const auto category_name = record.at("category").get<std::string>();
  const auto category = parse_category(category_name);
  if (!category) throw ValidationError(fmt::format("unknown category '{}'", category_name));
  s.category = *category;

  if (record.contains("gold")) {
    const auto& gold = record.at("gold");
    if (!gold.is_array()) throw ValidationError("'gold' must be an array of [start,end] pairs");
    for (const auto& pair : gold) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_unsigned()) {
        throw ValidationError("'gold' entries must be [start,end] pairs of non-negative integers");
      }
      s.gold_spans.push_back(make_span(pair[0].get<std::size_t>(), pair[1].get<std::size_t>()));
    }
  }
  if (record.contains("origin_id") && !record.at("origin_id").is_null()) {
    if (!record.at("origin_id").is_string()) throw ValidationError("'origin_id' must be a string");
    s.origin_id = record.at("origin_id").get<std::string>();
  }
  if (record.contains("split") && !record.at("split").is_null()) {
    const auto name = record.at("split").is_string() ? record.at("split").get<std::string>() : "";
    split = parse_split(name);
    if (!split) throw ValidationError(fmt::format("unknown split '{}'", name));
  }
  return s;
}

}  // namespace

Corpus load_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      std::optional<Split> split;
      auto sample = sample_from_json(json::parse(line), split);
      corpus.add(std::move(sample), split);
    } catch (const json::exception& e) {
      throw ValidationError(fmt::format("corpus line {}: {}", line_no, e.what()));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("corpus line {}: {}", line_no, e.what()));
    }
  }
  if (in.bad()) throw IoError("failed reading corpus");
  return corpus;
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open corpus '{}'", path));
  try {
    return load_corpus(in);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

void save_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus.samples()) {
    nlohmann::ordered_json record;
    record["id"] = s.id;
    record["text"] = s.text;
    record["category"] = std::string(to_string(s.category));
    if (!s.gold_spans.empty()) {
      auto gold = nlohmann::ordered_json::array();
      for (const auto& span : s.gold_spans) gold.push_back({span.start, span.end});
      record["gold"] = std::move(gold);
    }
    if (s.origin_id) record["origin_id"] = *s.origin_id;
    if (const auto split = corpus.split_of(s.id)) record["split"] = std::string(to_string(*split));
    out << record.dump() << '\n';
  }
}

void save_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write corpus '{}'", path));
  save_corpus(out, corpus);
  if (!out) throw IoError(fmt::format("failed writing corpus '{}'", path));
}

std::vector<Sample> cue_filter(std::span<const Sample> samples, const CueLexicon& lexicon) {
  std::vector<Sample> kept;
  for (const auto& s : samples) {
    const auto cues = find_cues(tokenize(s.text), lexicon);
    const bool negated = std::any_of(cues.begin(), cues.end(), [](const CueMatch& c) {
      return c.category == CueCategory::Pre || c.category == CueCategory::Post;
    });
    if (negated) kept.push_back(s);
  }
  return kept;
}

std::vector<std::string> DatasetConfig::training_ids() const {
  auto ids = base_ids;
  ids.insert(ids.end(), included_ids.begin(), included_ids.end());
  return ids;
}

std::string config_id_for(std::size_t k) { return fmt::format("k{}", k); }

std::optional<std::size_t> k_from_config_id(std::string_view id) {
  if (id.size() < 2 || id.front() != 'k') return std::nullopt;
  std::size_t k = 0;
  const auto digits = id.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return k;
}

DatasetConfig build_config(const Corpus& corpus, std::size_t k,
                           std::optional<std::uint64_t> shuffle_seed) {
  DatasetConfig config;
  config.id = config_id_for(k);
  config.k = k;
  std::vector<std::string> generated;
  for (const auto& s : corpus.samples()) {
    const bool train = corpus.split_of(s.id) == Split::Train;
    if (s.category == Category::NegADE_G) {
      generated.push_back(s.id);
    } else if (train && (s.category == Category::ADE || s.category == Category::NoADE)) {
      config.base_ids.push_back(s.id);
    }
  }
  if (k > generated.size()) {
    throw ValidationError(fmt::format("k={} exceeds the {} available negADE_G samples", k,
                                      generated.size()));
  }
  // samples() is already id-ordered.
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(generated.begin(), generated.end(), rng);
  }
  config.included_ids.assign(generated.begin(), generated.begin() + static_cast<std::ptrdiff_t>(k));
  return config;
}

const PartitionSummary::Row* PartitionSummary::row(std::string_view name) const {
  for (const auto& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t PartitionSummary::count(std::string_view row_name, FpBucket bucket) const {
  const auto* r = row(row_name);
  return r ? r->counts[static_cast<std::size_t>(bucket)] : 0;
}

double PartitionSummary::test_negade_share() const {
  const auto* test = row("test");
  if (!test || test->total() == 0) return 0.0;
  return 100.0 * static_cast<double>(test->counts[static_cast<std::size_t>(FpBucket::NegADE)]) /
         static_cast<double>(test->total());
}

PartitionSummary partition_summary(const Corpus& corpus) {
  PartitionSummary summary;
  summary.rows = {{"train", {}}, {"test", {}}};
  PartitionSummary::Row unassigned{"unassigned", {}};
  for (const auto& s : corpus.samples()) {
    const auto split = corpus.split_of(s.id);
    auto& row = !split ? unassigned : summary.rows[*split == Split::Train ? 0 : 1];
    ++row.counts[static_cast<std::size_t>(bucket_of(s.category))];
  }
  if (unassigned.total() > 0) summary.rows.push_back(unassigned);
  return summary;
}

std::string render_partition_summary(const PartitionSummary& summary) {
  std::ostringstream out;
  out << "split\tADE\tnoADE\tnegADE\ttotal\n";
  for (const auto& r : summary.rows) {
    out << fmt::format("{}\t{}\t{}\t{}\t{}\n", r.name, r.counts[0], r.counts[1], r.counts[2],
                       r.total());
  }
  out << fmt::format("test negADE share\t{:.1f}%\n", summary.test_negade_share());
  return out.str();
}

std::string_view to_string(AugmentationStatus s) {
  switch (s) {
    case AugmentationStatus::Proposed: return "proposed";
    case AugmentationStatus::Approved: return "approved";
    case AugmentationStatus::Discarded: return "discarded";
  }
  return "?";
}

}  // namespace nade
