#ifndef NADE_REVIEW_HPP_
#define NADE_REVIEW_HPP_

// Curation workflow state for human review of negation candidates
// (recovery flow) and proposed negated rewrites (generation flow).
//
// State is event-sourced: the task file plus the append-only decision log
// fully determine every resolution, report and export. A task resolves only
// once every assigned annotator has a verdict; it is accepted only if all
// latest verdicts accept, rejected if none do, and discarded otherwise.

#include <cstdint>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "nade/corpus.hpp"
#include "nade/error.hpp"
#include "nade/span.hpp"

namespace nade::review {

enum class Flow { Recovery, Generation };

enum class Verdict {
  NegatesAde,      // recovery: the text negates an ADE
  NegationNotAde,  // recovery: negation present, but not of an ADE
  Invalid,         // recovery: no usable negation
  Approve,         // generation
  RequestChanges,  // generation; counts as a non-accepting verdict
  Discard,         // generation
};

enum class Resolution { Pending, UnanimousAccept, UnanimousReject, NoAgreementDiscard };
enum class TaskStatus { Open, Accepted, Rejected, Discarded };

std::string_view to_string(Flow f);
std::string_view to_string(Verdict v);
std::string_view to_string(Resolution r);
std::string_view to_string(TaskStatus s);
std::optional<Flow> parse_flow(std::string_view s);
std::optional<Verdict> parse_verdict(std::string_view s);
Flow flow_of(Verdict v);
bool is_accepting(Verdict v);
TaskStatus status_of(Resolution r);

struct ReviewTask {
  std::uint64_t task_id = 0;
  Flow flow = Flow::Recovery;
  std::string sample_id;  // generation: id of the original ADE sample
  std::string text;       // recovery: candidate text; generation: edited text
  std::vector<Span> cue_spans;
  std::optional<std::string> original_text;  // generation only
  std::optional<std::string> author;         // generation: never reviews own task
  std::optional<std::string> generated_id;   // generation: id of the exported sample
  std::string edit_note;
  std::vector<std::string> assigned;         // empty: every registered annotator but the author
};

struct ReviewDecision {
  std::uint64_t task_id = 0;
  std::string annotator_id;
  Verdict verdict = Verdict::Invalid;
  std::string comment;
  std::string timestamp;  // ISO-8601 UTC; filled on submit when empty
};

struct AgreementState {
  std::uint64_t task_id = 0;
  std::map<Verdict, std::size_t> tally;  // latest verdict per annotator
  std::size_t decided = 0;
  std::size_t assigned = 0;
  Resolution resolution = Resolution::Pending;

  friend bool operator==(const AgreementState&, const AgreementState&) = default;
};

struct FlowCounts {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t discarded = 0;
  std::size_t pending = 0;
  friend bool operator==(const FlowCounts&, const FlowCounts&) = default;
};

struct AgreementReport {
  FlowCounts recovery;
  FlowCounts generation;
  std::map<std::string, std::size_t> decisions_by_annotator;  // effective decisions
  friend bool operator==(const AgreementReport&, const AgreementReport&) = default;
};

/// Workflow violations, each mapped to an HTTP status by the server.
class ReviewError : public ValidationError {
 public:
  enum class Kind { UnknownAnnotator, UnknownTask, NotAssigned, SelfReview, ClosedTask, WrongFlow, BadRequest };
  ReviewError(Kind kind, const std::string& message) : ValidationError(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Task files are JSON lines; the output of `nade recover` is accepted as-is.
std::vector<ReviewTask> load_tasks(std::istream& in);
std::vector<ReviewTask> load_tasks_file(const std::string& path);
std::string task_to_json(const ReviewTask& task, TaskStatus status);

std::string decision_to_json(const ReviewDecision& d);
ReviewDecision decision_from_json(std::string_view line);
std::string agreement_to_json(const AgreementState& s);
std::string report_to_json(const AgreementReport& r);

class ReviewStore {
 public:
  /// Throws ValidationError on duplicate task ids, generation tasks without
  /// both texts, or an empty annotator list.
  ReviewStore(std::vector<ReviewTask> tasks, std::vector<std::string> annotators);

  /// Appends every future decision (one JSON line, flushed) to `log`.
  void attach_log(std::ostream* log);

  /// Applies a previously written decision log. Throws ValidationError with
  /// the line number on a malformed or illegal entry.
  void replay(std::istream& log);

  std::optional<ReviewTask> next_task(const std::string& annotator, Flow flow);

  /// Validates, logs, then applies the decision.
  AgreementState submit(ReviewDecision decision);

  AgreementState agreement(std::uint64_t task_id) const;
  AgreementReport report() const;

  /// Corpus JSON lines of accepted tasks: recovery as negADE_R (test split),
  /// generation as negADE_G (train split) with origin_id.
  std::string export_accepted(Flow flow) const;
  std::vector<AugmentationRecord> augmentation_records() const;

  const std::vector<std::string>& annotators() const { return annotators_; }
  std::vector<ReviewDecision> decisions() const;
  /// (annotator, task) pairs handed out by next_task, in order.
  std::vector<std::pair<std::string, std::uint64_t>> served() const;
  TaskStatus status(std::uint64_t task_id) const;

 private:
  struct TaskState {
    ReviewTask task;
    std::vector<std::string> assigned;
    std::map<std::string, Verdict> latest;
    Resolution resolution = Resolution::Pending;
  };

  void check_decision(const ReviewDecision& d) const;
  void apply(const ReviewDecision& d);
  AgreementState agreement_locked(const TaskState& state) const;
  const TaskState& state_of(std::uint64_t task_id) const;

  mutable std::shared_mutex mutex_;
  std::vector<std::string> annotators_;
  std::map<std::uint64_t, TaskState> tasks_;
  std::vector<ReviewDecision> log_entries_;
  std::vector<std::pair<std::string, std::uint64_t>> served_;
  std::ostream* log_ = nullptr;
};

}  // namespace nade::review

#endif  // NADE_REVIEW_HPP_
