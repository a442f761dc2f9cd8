#include "nade/predictions.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "nade/error.hpp"

namespace nade {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

std::optional<std::size_t> parse_offset(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::string PredictionSet::label() const {
  return detector_id ? model_id + "+" + *detector_id : model_id;
}

std::size_t PredictionSet::span_count() const {
  std::size_t n = 0;
  for (const auto& [_, spans] : spans_by_sample) n += spans.size();
  return n;
}

const std::vector<Span>& PredictionSet::spans_for(const std::string& sample_id) const {
  static const std::vector<Span> kEmpty;
  const auto it = spans_by_sample.find(sample_id);
  return it == spans_by_sample.end() ? kEmpty : it->second;
}

PredictionSet load_predictions(std::istream& in, OverlapPolicy policy) {
  PredictionSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;  // plain comment
      const std::string key = line.substr(1, eq - 1);
      std::string value = line.substr(eq + 1);
      if (key == "model") {
        set.model_id = std::move(value);
      } else if (key == "detector") {
        set.detector_id = std::move(value);
      } else if (key == "config") {
        set.config_id = std::move(value);
      } else if (key == "run") {
        set.run_id = std::move(value);
      } else {
        throw ValidationError(fmt::format("line {}: unknown header key '{}'", line_no, key));
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3 || fields[0].empty()) {
      throw ValidationError(
          fmt::format("line {}: expected sample_id<TAB>start<TAB>end", line_no));
    }
    const auto start = parse_offset(fields[1]);
    const auto end = parse_offset(fields[2]);
    if (!start || !end) {
      throw ValidationError(fmt::format("line {}: offsets must be non-negative integers", line_no));
    }
    if (*start >= *end) {
      throw ValidationError(fmt::format("line {}: empty or inverted span [{},{})", line_no,
                                        *start, *end));
    }
    set.spans_by_sample[std::string(fields[0])].push_back(Span{*start, *end});
  }
  if (in.bad()) throw IoError("failed reading predictions");

  for (auto& [id, spans] : set.spans_by_sample) {
    if (policy == OverlapPolicy::Merge) {
      spans = merge_overlapping(spans);
    } else {
      spans = require_disjoint(spans, fmt::format("predictions for sample '{}'", id));
    }
  }
  return set;
}

PredictionSet load_predictions_file(const std::string& path, OverlapPolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open predictions '{}'", path));
  try {
    return load_predictions(in, policy);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

void save_predictions(std::ostream& out, const PredictionSet& predictions) {
  out << "#model=" << predictions.model_id << '\n';
  if (predictions.detector_id) out << "#detector=" << *predictions.detector_id << '\n';
  out << "#config=" << predictions.config_id << '\n';
  out << "#run=" << predictions.run_id << '\n';
  for (const auto& [id, spans] : predictions.spans_by_sample) {
    if (id.find_first_of("\t\n") != std::string::npos) {
      throw ValidationError(fmt::format("sample id '{}' contains a tab or newline", id));
    }
    for (const auto& s : sorted_spans(spans)) {
      out << id << '\t' << s.start << '\t' << s.end << '\n';
    }
  }
}

void save_predictions_file(const std::string& path, const PredictionSet& predictions) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write predictions '{}'", path));
  save_predictions(out, predictions);
  if (!out) throw IoError(fmt::format("failed writing predictions '{}'", path));
}

}  // namespace nade
