#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epiladder/grader.hpp"
#include "epiladder/instance.hpp"
#include "epiladder/narrative.hpp"
#include "epiladder/remote.hpp"

namespace epiladder {

enum class ResponderKind { Oracle, Constant, Scripted, Remote };

struct ResponderSpec {
  ResponderKind kind = ResponderKind::Oracle;
  /// Display id; derived from the kind when empty.
  std::string name;
  /// Reply text of a constant responder.
  std::string constant_text;
  /// JSONL fixture of {"id", "response"} lines for a scripted responder.
  std::string script_path;
  RemoteSettings remote;
};

/// Parses "oracle", "constant:<text>", "scripted:<path>" or
/// "remote:<name>" (looked up in `config`'s "responders" object).
ResponderSpec parse_responder(const std::string& selector, const nlohmann::json& config = nlohmann::json::object());
ResponderSpec responder_from_json(const std::string& name, const nlohmann::json& j);
std::string responder_id(const ResponderSpec& spec);

struct Reply {
  std::string text;
  int attempts = 1;
  bool transport_failure = false;
  std::string error;
};

class Responder {
 public:
  virtual ~Responder() = default;
  virtual std::string id() const = 0;
  /// Offline responders run sequentially and produce byte-identical records.
  virtual bool offline() const { return true; }
  virtual int concurrency() const { return 1; }
  virtual Reply respond(const LabeledInstance& item, const PromptBundle& prompt) = 0;
};

/// Throws CredentialError if a remote token variable is unset.
std::unique_ptr<Responder> make_responder(const ResponderSpec& spec);

/// Offline responder backed by a callable; used from Python and in tests.
std::unique_ptr<Responder> make_function_responder(std::string id,
                                                   std::function<std::string(const PromptBundle&)> fn);

struct EvalRecord {
  std::string instance_id;
  int rung = 1;
  std::string responder_id;
  std::string prompt;
  std::string raw_response;
  std::string matched_line;
  Verdict verdict = Verdict::Invalid;
  Answer truth = Answer::Unknown;
  Score score = Score::Invalid;
  bool invalid = false;
  /// Set when the responder never produced a reply; such records are
  /// excluded from accuracy.
  bool transport_failure = false;
  std::string error;
  double latency_ms = 0.0;
  int attempts = 0;
  std::string timestamp;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct EvalSettings {
  TemplateSet templates = TemplateSet::builtin();
  RenderOptions render;
  GraderOptions grader;
};

/// Scores a raw reply the same way run_eval does.
EvalRecord grade_reply(const LabeledInstance& item, const PromptBundle& prompt, const std::string& responder,
                       const Reply& reply, const GraderOptions& options);

PromptBundle render_for(const LabeledInstance& item, const EvalSettings& settings);

/// One record per instance, in input order.
std::vector<EvalRecord> run_eval(const std::vector<LabeledInstance>& items, Responder& responder,
                                 const EvalSettings& settings = {});

struct MajorityBaseline {
  Answer label = Answer::Unknown;
  double accuracy = 0.0;
  /// More than one label shares the top count; ties go to Yes, then No.
  bool tie = false;

  friend bool operator==(const MajorityBaseline&, const MajorityBaseline&) = default;
};

MajorityBaseline majority_baseline(const std::vector<Answer>& labels);

struct Distribution {
  double yes = 0.0;
  double no = 0.0;
  double unknown = 0.0;
  double invalid = 0.0;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct RungMetrics {
  /// 0 for the all-rung aggregate.
  int rung = 0;
  std::size_t records = 0;
  std::size_t scored = 0;
  std::size_t correct = 0;
  std::size_t invalid = 0;
  std::size_t transport_failures = 0;
  double accuracy = 0.0;
  double invalid_rate = 0.0;
  Distribution responses;
  Distribution truths;
  /// Accuracy restricted to records whose truth is yes / no / unknown.
  Distribution per_label_accuracy;
  MajorityBaseline majority;
  std::string top_response;
  /// Share of the most frequent response; near 1 means a constant responder.
  double top_response_share = 0.0;
  bool beats_majority = false;

  friend bool operator==(const RungMetrics&, const RungMetrics&) = default;
};

struct ResponderMetrics {
  std::string responder_id;
  std::vector<RungMetrics> rungs;
  RungMetrics overall;

  friend bool operator==(const ResponderMetrics&, const ResponderMetrics&) = default;
};

struct MetricsReport {
  std::vector<ResponderMetrics> responders;
  nlohmann::json meta = nlohmann::json::object();

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Groups by responder, then by rung. Throws EmptyInput on no records.
MetricsReport compute_metrics(const std::vector<EvalRecord>& records);

nlohmann::json to_json(const EvalRecord& record);
EvalRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);

std::string format_report_table(const MetricsReport& report);
/// Rows are responders, columns the rungs present anywhere in the report.
std::string format_accuracy_csv(const MetricsReport& report);

void write_records(const std::string& path, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> read_records(const std::string& path);

/// Writes <dir>/report.json, <dir>/report.txt and <dir>/accuracy.csv.
void write_report(const std::string& dir, const MetricsReport& report);
MetricsReport read_report(const std::string& path);

}  // namespace epiladder
