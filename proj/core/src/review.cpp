#include "nade/review.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "nade/text.hpp"

namespace nade::review {

using json = nlohmann::ordered_json;
using Kind = ReviewError::Kind;

std::string_view to_string(Flow f) { return f == Flow::Recovery ? "recovery" : "generation"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NegatesAde: return "NEGATES_ADE";
    case Verdict::NegationNotAde: return "NEGATION_NOT_ADE";
    case Verdict::Invalid: return "INVALID";
    case Verdict::Approve: return "APPROVE";
    case Verdict::RequestChanges: return "REQUEST_CHANGES";
    case Verdict::Discard: return "DISCARD";
  }
  return "?";
}

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::Pending: return "pending";
    case Resolution::UnanimousAccept: return "unanimous-accept";
    case Resolution::UnanimousReject: return "unanimous-reject";
    case Resolution::NoAgreementDiscard: return "no-agreement-discard";
  }
  return "?";
}

std::string_view to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::Open: return "open";
    case TaskStatus::Accepted: return "accepted";
    case TaskStatus::Rejected: return "rejected";
    case TaskStatus::Discarded: return "discarded";
  }
  return "?";
}

std::optional<Flow> parse_flow(std::string_view s) {
  if (s == "recovery") return Flow::Recovery;
  if (s == "generation") return Flow::Generation;
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::NegatesAde, Verdict::NegationNotAde, Verdict::Invalid, Verdict::Approve,
                 Verdict::RequestChanges, Verdict::Discard}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

Flow flow_of(Verdict v) {
  switch (v) {
    case Verdict::NegatesAde:
    case Verdict::NegationNotAde:
    case Verdict::Invalid:
      return Flow::Recovery;
    default:
      return Flow::Generation;
  }
}

bool is_accepting(Verdict v) { return v == Verdict::NegatesAde || v == Verdict::Approve; }

TaskStatus status_of(Resolution r) {
  switch (r) {
    case Resolution::Pending: return TaskStatus::Open;
    case Resolution::UnanimousAccept: return TaskStatus::Accepted;
    case Resolution::UnanimousReject: return TaskStatus::Rejected;
    case Resolution::NoAgreementDiscard: return TaskStatus::Discarded;
  }
  return TaskStatus::Open;
}

namespace {

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw ValidationError(fmt::format("'{}' must be a string", key));
  return j.at(key).get<std::string>();
}

std::string required_string(const nlohmann::json& j, const char* key) {
  auto value = optional_string(j, key);
  if (!value) throw ValidationError(fmt::format("missing field '{}'", key));
  return *value;
}

ReviewTask task_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("task is not a JSON object");
  ReviewTask t;
  if (!j.contains("task_id") || !j.at("task_id").is_number_unsigned()) {
    throw ValidationError("missing or non-integer 'task_id'");
  }
  t.task_id = j.at("task_id").get<std::uint64_t>();
  const auto flow_name = required_string(j, "flow");
  const auto flow = parse_flow(flow_name);
  if (!flow) throw ValidationError(fmt::format("unknown flow '{}'", flow_name));
  t.flow = *flow;
  t.sample_id = required_string(j, "sample_id");
  if (t.flow == Flow::Recovery) {
    t.text = required_string(j, "text");
  } else {
    t.original_text = optional_string(j, "original_text");
    auto edited = optional_string(j, "edited_text");
    if (!t.original_text || !edited) {
      throw ValidationError("generation tasks need both 'original_text' and 'edited_text'");
    }
    t.text = *edited;
  }
  if (j.contains("cues")) {
    for (const auto& cue : j.at("cues")) {
      if (!cue.is_array() || cue.size() < 2 || !cue[0].is_number_unsigned() ||
          !cue[1].is_number_unsigned()) {
        throw ValidationError("'cues' entries must start with [start,end]");
      }
      t.cue_spans.push_back(make_span(cue[0].get<std::size_t>(), cue[1].get<std::size_t>()));
    }
    const auto length = codepoint_length(t.text);
    for (const auto& s : t.cue_spans) {
      if (s.end > length) throw ValidationError(fmt::format("cue {} out of bounds", to_string(s)));
    }
  }
  t.author = optional_string(j, "author");
  t.generated_id = optional_string(j, "generated_id");
  t.edit_note = optional_string(j, "edit_note").value_or("");
  if (j.contains("assigned")) {
    for (const auto& a : j.at("assigned")) {
      if (!a.is_string()) throw ValidationError("'assigned' must list annotator ids");
      t.assigned.push_back(a.get<std::string>());
    }
  }
  return t;
}

std::string now_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<ReviewTask> load_tasks(std::istream& in) {
  std::vector<ReviewTask> tasks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      tasks.push_back(task_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(fmt::format("task line {}: {}", line_no, e.what()));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("task line {}: {}", line_no, e.what()));
    }
  }
  return tasks;
}

std::vector<ReviewTask> load_tasks_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open task file '{}'", path));
  return load_tasks(in);
}

std::string task_to_json(const ReviewTask& t, TaskStatus status) {
  json j;
  j["task_id"] = t.task_id;
  j["flow"] = std::string(to_string(t.flow));
  j["sample_id"] = t.sample_id;
  j["text"] = t.text;
  auto cues = json::array();
  for (const auto& s : t.cue_spans) cues.push_back({s.start, s.end});
  j["cues"] = std::move(cues);
  if (t.original_text) {
    j["original_text"] = *t.original_text;
    j["edited_text"] = t.text;
  }
  if (t.author) j["author"] = *t.author;
  j["status"] = std::string(to_string(status));
  return j.dump();
}

std::string decision_to_json(const ReviewDecision& d) {
  json j;
  j["task_id"] = d.task_id;
  j["annotator"] = d.annotator_id;
  j["verdict"] = std::string(to_string(d.verdict));
  j["comment"] = d.comment;
  j["timestamp"] = d.timestamp;
  return j.dump();
}

ReviewDecision decision_from_json(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ReviewError(Kind::BadRequest, fmt::format("malformed decision: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("task_id") || !j.at("task_id").is_number_unsigned()) {
    throw ReviewError(Kind::BadRequest, "decision needs an integer 'task_id'");
  }
  ReviewDecision d;
  d.task_id = j.at("task_id").get<std::uint64_t>();
  try {
    d.annotator_id = required_string(j, j.contains("annotator_id") ? "annotator_id" : "annotator");
    const auto verdict = required_string(j, "verdict");
    const auto parsed = parse_verdict(verdict);
    if (!parsed) throw ValidationError(fmt::format("unknown verdict '{}'", verdict));
    d.verdict = *parsed;
    d.comment = optional_string(j, "comment").value_or("");
    d.timestamp = optional_string(j, "timestamp").value_or("");
  } catch (const ReviewError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ReviewError(Kind::BadRequest, e.what());
  }
  return d;
}

std::string agreement_to_json(const AgreementState& s) {
  json j;
  j["task_id"] = s.task_id;
  json tally = json::object();
  for (const auto& [verdict, n] : s.tally) tally[std::string(to_string(verdict))] = n;
  j["tally"] = std::move(tally);
  j["decided"] = s.decided;
  j["assigned"] = s.assigned;
  j["resolution"] = std::string(to_string(s.resolution));
  return j.dump();
}

std::string report_to_json(const AgreementReport& r) {
  auto counts = [](const FlowCounts& c) {
    json j;
    j["accepted"] = c.accepted;
    j["rejected"] = c.rejected;
    j["discarded"] = c.discarded;
    j["pending"] = c.pending;
    return j;
  };
  json j;
  j["recovery"] = counts(r.recovery);
  j["generation"] = counts(r.generation);
  json by = json::object();
  for (const auto& [a, n] : r.decisions_by_annotator) by[a] = n;
  j["annotators"] = std::move(by);
  return j.dump();
}

ReviewStore::ReviewStore(std::vector<ReviewTask> tasks, std::vector<std::string> annotators)
    : annotators_(std::move(annotators)) {
  if (annotators_.empty()) throw ValidationError("at least one annotator must be registered");
  std::set<std::string> registered(annotators_.begin(), annotators_.end());
  if (registered.size() != annotators_.size()) throw ValidationError("duplicate annotator id");
  for (auto& task : tasks) {
    if (tasks_.contains(task.task_id)) {
      throw ValidationError(fmt::format("duplicate task id {}", task.task_id));
    }
    if (task.flow == Flow::Generation && !task.original_text) {
      throw ValidationError(fmt::format("generation task {} lacks the original text", task.task_id));
    }
    TaskState state;
    if (task.assigned.empty()) {
      for (const auto& a : annotators_) {
        if (a != task.author) state.assigned.push_back(a);
      }
    } else {
      for (const auto& a : task.assigned) {
        if (!registered.contains(a)) {
          throw ValidationError(
              fmt::format("task {} assigns unregistered annotator '{}'", task.task_id, a));
        }
        if (a == task.author) {
          throw ValidationError(
              fmt::format("task {} assigns its author '{}' as reviewer", task.task_id, a));
        }
      }
      state.assigned = task.assigned;
    }
    if (state.assigned.empty()) {
      throw ValidationError(fmt::format("task {} has no eligible reviewer", task.task_id));
    }
    const auto id = task.task_id;
    state.task = std::move(task);
    tasks_.emplace(id, std::move(state));
  }
}

void ReviewStore::attach_log(std::ostream* log) {
  std::unique_lock lock(mutex_);
  log_ = log;
}

const ReviewStore::TaskState& ReviewStore::state_of(std::uint64_t task_id) const {
  const auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw ReviewError(Kind::UnknownTask, fmt::format("unknown task {}", task_id));
  return it->second;
}

void ReviewStore::check_decision(const ReviewDecision& d) const {
  if (std::find(annotators_.begin(), annotators_.end(), d.annotator_id) == annotators_.end()) {
    throw ReviewError(Kind::UnknownAnnotator, fmt::format("unknown annotator '{}'", d.annotator_id));
  }
  const auto& state = state_of(d.task_id);
  if (state.task.author == d.annotator_id) {
    throw ReviewError(Kind::SelfReview,
                      fmt::format("annotator '{}' authored task {}", d.annotator_id, d.task_id));
  }
  if (std::find(state.assigned.begin(), state.assigned.end(), d.annotator_id) ==
      state.assigned.end()) {
    throw ReviewError(Kind::NotAssigned, fmt::format("annotator '{}' is not assigned to task {}",
                                                     d.annotator_id, d.task_id));
  }
  if (flow_of(d.verdict) != state.task.flow) {
    throw ReviewError(Kind::WrongFlow, fmt::format("verdict {} does not apply to {} task {}",
                                                   to_string(d.verdict), to_string(state.task.flow),
                                                   d.task_id));
  }
  if (state.resolution != Resolution::Pending) {
    throw ReviewError(Kind::ClosedTask, fmt::format("task {} is closed ({})", d.task_id,
                                                    to_string(state.resolution)));
  }
}

void ReviewStore::apply(const ReviewDecision& d) {
  auto& state = tasks_.at(d.task_id);
  state.latest[d.annotator_id] = d.verdict;
  log_entries_.push_back(d);
  if (state.latest.size() < state.assigned.size()) return;
  const auto accepts = static_cast<std::size_t>(std::count_if(
      state.latest.begin(), state.latest.end(), [](const auto& kv) { return is_accepting(kv.second); }));
  if (accepts == state.latest.size()) {
    state.resolution = Resolution::UnanimousAccept;
  } else if (accepts == 0) {
    state.resolution = Resolution::UnanimousReject;
  } else {
    state.resolution = Resolution::NoAgreementDiscard;
  }
}

void ReviewStore::replay(std::istream& log) {
  std::unique_lock lock(mutex_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto d = decision_from_json(line);
      check_decision(d);
      apply(d);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("decision log line {}: {}", line_no, e.what()));
    }
  }
}

std::optional<ReviewTask> ReviewStore::next_task(const std::string& annotator, Flow flow) {
  std::unique_lock lock(mutex_);
  if (std::find(annotators_.begin(), annotators_.end(), annotator) == annotators_.end()) {
    throw ReviewError(Kind::UnknownAnnotator, fmt::format("unknown annotator '{}'", annotator));
  }
  for (const auto& [id, state] : tasks_) {
    if (state.task.flow != flow || state.resolution != Resolution::Pending) continue;
    if (state.task.author == annotator) continue;
    if (std::find(state.assigned.begin(), state.assigned.end(), annotator) == state.assigned.end()) {
      continue;
    }
    if (state.latest.contains(annotator)) continue;
    served_.emplace_back(annotator, id);
    return state.task;
  }
  return std::nullopt;
}

AgreementState ReviewStore::submit(ReviewDecision decision) {
  std::unique_lock lock(mutex_);
  check_decision(decision);
  if (decision.timestamp.empty()) decision.timestamp = now_utc();
  if (log_) {
    *log_ << decision_to_json(decision) << '\n';
    log_->flush();
    if (!*log_) throw IoError("failed appending to the decision log");
  }
  apply(decision);
  return agreement_locked(tasks_.at(decision.task_id));
}

AgreementState ReviewStore::agreement_locked(const TaskState& state) const {
  AgreementState s;
  s.task_id = state.task.task_id;
  for (const auto& [_, verdict] : state.latest) ++s.tally[verdict];
  s.decided = state.latest.size();
  s.assigned = state.assigned.size();
  s.resolution = state.resolution;
  return s;
}

AgreementState ReviewStore::agreement(std::uint64_t task_id) const {
  std::shared_lock lock(mutex_);
  return agreement_locked(state_of(task_id));
}

AgreementReport ReviewStore::report() const {
  std::shared_lock lock(mutex_);
  AgreementReport r;
  for (const auto& a : annotators_) r.decisions_by_annotator[a] = 0;
  for (const auto& [_, state] : tasks_) {
    auto& counts = state.task.flow == Flow::Recovery ? r.recovery : r.generation;
    switch (state.resolution) {
      case Resolution::Pending: ++counts.pending; break;
      case Resolution::UnanimousAccept: ++counts.accepted; break;
      case Resolution::UnanimousReject: ++counts.rejected; break;
      case Resolution::NoAgreementDiscard: ++counts.discarded; break;
    }
    for (const auto& [annotator, _v] : state.latest) ++r.decisions_by_annotator[annotator];
  }
  return r;
}

std::string ReviewStore::export_accepted(Flow flow) const {
  std::shared_lock lock(mutex_);
  Corpus corpus;
  for (const auto& [_, state] : tasks_) {
    if (state.task.flow != flow || state.resolution != Resolution::UnanimousAccept) continue;
    Sample s;
    if (flow == Flow::Recovery) {
      s.id = state.task.sample_id;
      s.text = state.task.text;
      s.category = Category::NegADE_R;
      corpus.add(std::move(s), Split::Test);
    } else {
      s.id = state.task.generated_id.value_or(state.task.sample_id + "_neg");
      s.text = state.task.text;
      s.category = Category::NegADE_G;
      s.origin_id = state.task.sample_id;
      corpus.add(std::move(s), Split::Train);
    }
  }
  std::ostringstream out;
  save_corpus(out, corpus);
  return out.str();
}

std::vector<AugmentationRecord> ReviewStore::augmentation_records() const {
  std::shared_lock lock(mutex_);
  std::vector<AugmentationRecord> records;
  for (const auto& [_, state] : tasks_) {
    if (state.task.flow != Flow::Generation) continue;
    AugmentationRecord r;
    r.original_id = state.task.sample_id;
    r.generated_id = state.task.generated_id.value_or(state.task.sample_id + "_neg");
    r.edit_note = state.task.edit_note;
    switch (state.resolution) {
      case Resolution::UnanimousAccept: r.status = AugmentationStatus::Approved; break;
      case Resolution::Pending: r.status = AugmentationStatus::Proposed; break;
      default: r.status = AugmentationStatus::Discarded; break;
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ReviewDecision> ReviewStore::decisions() const {
  std::shared_lock lock(mutex_);
  return log_entries_;
}

std::vector<std::pair<std::string, std::uint64_t>> ReviewStore::served() const {
  std::shared_lock lock(mutex_);
  return served_;
}

TaskStatus ReviewStore::status(std::uint64_t task_id) const {
  std::shared_lock lock(mutex_);
  return status_of(state_of(task_id).resolution);
}

}  // namespace nade::review
