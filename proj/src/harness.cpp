#include "epiladder/harness.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "epiladder/errors.hpp"

namespace epiladder {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Responders

namespace {

Reply text_reply(std::string text) {
  Reply r;
  r.text = std::move(text);
  return r;
}

Reply failed_reply(std::string error, int attempts) {
  Reply r;
  r.attempts = attempts;
  r.transport_failure = true;
  r.error = std::move(error);
  return r;
}

class OracleResponder final : public Responder {
 public:
  explicit OracleResponder(std::string id) : id_(std::move(id)) {}
  std::string id() const override { return id_; }
  // Re-solves the instance instead of echoing the stored label.
  Reply respond(const LabeledInstance& item, const PromptBundle&) override {
    return text_reply(std::string(surface_form(ground_truth(item.instance).answer)));
  }

 private:
  std::string id_;
};

class ConstantResponder final : public Responder {
 public:
  ConstantResponder(std::string id, std::string text) : id_(std::move(id)), text_(std::move(text)) {}
  std::string id() const override { return id_; }
  Reply respond(const LabeledInstance&, const PromptBundle&) override { return text_reply(text_); }

 private:
  std::string id_;
  std::string text_;
};

class ScriptedResponder final : public Responder {
 public:
  ScriptedResponder(std::string id, const std::string& path) : id_(std::move(id)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scripted responses " + path);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      try {
        json j = json::parse(line);
        responses_[j.at("id").get<std::string>()] = j.at("response").get<std::string>();
      } catch (const json::exception& e) {
        throw SchemaError(path + ":" + std::to_string(number) + ": " + e.what());
      }
    }
  }
  std::string id() const override { return id_; }
  Reply respond(const LabeledInstance& item, const PromptBundle&) override {
    auto it = responses_.find(item.instance.id);
    if (it == responses_.end()) return failed_reply("no scripted response for " + item.instance.id, 0);
    return text_reply(it->second);
  }

 private:
  std::string id_;
  std::unordered_map<std::string, std::string> responses_;
};

class FunctionResponder final : public Responder {
 public:
  FunctionResponder(std::string id, std::function<std::string(const PromptBundle&)> fn)
      : id_(std::move(id)), fn_(std::move(fn)) {}
  std::string id() const override { return id_; }
  Reply respond(const LabeledInstance&, const PromptBundle& prompt) override { return text_reply(fn_(prompt)); }

 private:
  std::string id_;
  std::function<std::string(const PromptBundle&)> fn_;
};

class RemoteResponder final : public Responder {
 public:
  RemoteResponder(std::string id, const RemoteSettings& settings, std::string token)
      : id_(std::move(id)), client_(settings, std::move(token)) {}
  std::string id() const override { return id_; }
  bool offline() const override { return false; }
  int concurrency() const override { return client_.settings().max_concurrency; }
  Reply respond(const LabeledInstance&, const PromptBundle& prompt) override {
    RemoteOutcome out = client_.complete(prompt.text);
    return Reply{std::move(out.text), out.attempts, !out.ok, std::move(out.error)};
  }

 private:
  std::string id_;
  ChatClient client_;
};

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ResponderSpec responder_from_json(const std::string& name, const json& j) {
  ResponderSpec spec;
  spec.name = j.value("name", name);
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "oracle") {
      spec.kind = ResponderKind::Oracle;
    } else if (kind == "constant") {
      spec.kind = ResponderKind::Constant;
      spec.constant_text = j.at("text").get<std::string>();
    } else if (kind == "scripted") {
      spec.kind = ResponderKind::Scripted;
      spec.script_path = j.at("path").get<std::string>();
    } else if (kind == "remote") {
      spec.kind = ResponderKind::Remote;
      RemoteSettings& r = spec.remote;
      r.endpoint = j.at("endpoint").get<std::string>();
      r.model = j.at("model").get<std::string>();
      r.temperature = j.value("temperature", r.temperature);
      r.max_tokens = j.value("max_tokens", r.max_tokens);
      r.auth_env = j.value("auth_env", r.auth_env);
      r.auth_header = j.value("auth_header", r.auth_header);
      r.auth_prefix = j.value("auth_prefix", r.auth_prefix);
      r.timeout = std::chrono::milliseconds(j.value("timeout_ms", static_cast<long long>(r.timeout.count())));
      r.max_concurrency = j.value("max_concurrency", r.max_concurrency);
      r.requests_per_second = j.value("requests_per_second", r.requests_per_second);
      if (j.contains("retry")) {
        const json& retry = j["retry"];
        r.retry.max_attempts = retry.value("max_attempts", r.retry.max_attempts);
        r.retry.initial_backoff =
            std::chrono::milliseconds(retry.value("initial_backoff_ms", static_cast<long long>(r.retry.initial_backoff.count())));
        r.retry.max_backoff =
            std::chrono::milliseconds(retry.value("max_backoff_ms", static_cast<long long>(r.retry.max_backoff.count())));
        r.retry.multiplier = retry.value("multiplier", r.retry.multiplier);
        r.retry.jitter = retry.value("jitter", r.retry.jitter);
      }
      check_remote_settings(r);
    } else {
      throw ConfigError("responder '" + name + "': unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError("responder '" + name + "': " + e.what());
  }
  return spec;
}

ResponderSpec parse_responder(const std::string& selector, const json& config) {
  auto lookup = [&](const std::string& name) -> std::optional<ResponderSpec> {
    if (config.is_object() && config.contains("responders") && config["responders"].contains(name)) {
      return responder_from_json(name, config["responders"][name]);
    }
    return std::nullopt;
  };
  ResponderSpec spec;
  if (selector == "oracle") {
    spec.kind = ResponderKind::Oracle;
  } else if (selector.starts_with("constant:")) {
    spec.kind = ResponderKind::Constant;
    spec.constant_text = selector.substr(9);
  } else if (selector.starts_with("scripted:")) {
    spec.kind = ResponderKind::Scripted;
    spec.script_path = selector.substr(9);
    if (spec.script_path.empty()) throw ConfigError("scripted responder needs a fixture path");
  } else if (selector.starts_with("remote:")) {
    auto found = lookup(selector.substr(7));
    if (!found) throw ConfigError("no responder named '" + selector.substr(7) + "' in config");
    spec = *found;
  } else if (auto found = lookup(selector)) {
    spec = *found;
  } else {
    throw ConfigError("unknown responder '" + selector + "'");
  }
  return spec;
}

std::string responder_id(const ResponderSpec& spec) {
  if (!spec.name.empty()) return spec.name;
  switch (spec.kind) {
    case ResponderKind::Oracle: return "oracle";
    case ResponderKind::Constant: return "constant:" + spec.constant_text;
    case ResponderKind::Scripted: return "scripted:" + fs::path(spec.script_path).stem().string();
    case ResponderKind::Remote: return "remote:" + spec.remote.model;
  }
  return "unknown";
}

std::unique_ptr<Responder> make_responder(const ResponderSpec& spec) {
  const std::string id = responder_id(spec);
  switch (spec.kind) {
    case ResponderKind::Oracle: return std::make_unique<OracleResponder>(id);
    case ResponderKind::Constant: return std::make_unique<ConstantResponder>(id, spec.constant_text);
    case ResponderKind::Scripted: return std::make_unique<ScriptedResponder>(id, spec.script_path);
    case ResponderKind::Remote: {
      std::string token;
      if (!spec.remote.auth_env.empty()) {
        const char* value = std::getenv(spec.remote.auth_env.c_str());
        if (value == nullptr || *value == '\0') {
          throw CredentialError("environment variable " + spec.remote.auth_env + " is not set");
        }
        token = value;
      }
      return std::make_unique<RemoteResponder>(id, spec.remote, std::move(token));
    }
  }
  throw ConfigError("unsupported responder kind");
}

std::unique_ptr<Responder> make_function_responder(std::string id,
                                                   std::function<std::string(const PromptBundle&)> fn) {
  return std::make_unique<FunctionResponder>(std::move(id), std::move(fn));
}

// ---------------------------------------------------------------------------
// Evaluation

PromptBundle render_for(const LabeledInstance& item, const EvalSettings& settings) {
  const PuzzleInstance& inst = item.instance;
  const std::string setting_id = inst.setting.empty() ? std::string(default_setting(inst.rung)) : inst.setting;
  return render_prompt(inst, item.label.trace, settings.templates.setting(setting_id), settings.render);
}

EvalRecord grade_reply(const LabeledInstance& item, const PromptBundle& prompt, const std::string& responder,
                       const Reply& reply, const GraderOptions& options) {
  EvalRecord r;
  r.instance_id = item.instance.id;
  r.rung = rung_number(item.instance.rung);
  r.responder_id = responder;
  r.prompt = prompt.text;
  r.truth = item.label.answer;
  r.attempts = reply.attempts;
  r.error = reply.error;
  if (reply.transport_failure) {
    r.transport_failure = true;
    r.verdict = Verdict::Invalid;
    r.score = Score::Invalid;
    return r;
  }
  r.raw_response = reply.text;
  ParsedResponse parsed = parse_response(reply.text, options);
  r.matched_line = parsed.matched_line;
  r.verdict = parsed.verdict;
  r.score = score(parsed, item.label.answer);
  r.invalid = parsed.verdict == Verdict::Invalid;
  return r;
}

std::vector<EvalRecord> run_eval(const std::vector<LabeledInstance>& items, Responder& responder,
                                 const EvalSettings& settings) {
  std::vector<PromptBundle> prompts;
  prompts.reserve(items.size());
  for (const auto& item : items) prompts.push_back(render_for(item, settings));

  const std::string id = responder.id();
  std::vector<EvalRecord> records(items.size());
  if (responder.offline()) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      records[i] = grade_reply(items[i], prompts[i], id, responder.respond(items[i], prompts[i]), settings.grader);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const std::string stamp = now_iso8601();
      const auto start = std::chrono::steady_clock::now();
      Reply reply;
      try {
        reply = responder.respond(items[i], prompts[i]);
      } catch (const std::exception& e) {
        reply = failed_reply(e.what(), 0);
      }
      const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
      records[i] = grade_reply(items[i], prompts[i], id, reply, settings.grader);
      records[i].latency_ms = elapsed.count();
      records[i].timestamp = stamp;
    }
  };
  const int threads = std::max(1, std::min<int>(responder.concurrency(), static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

// ---------------------------------------------------------------------------
// Metrics

MajorityBaseline majority_baseline(const std::vector<Answer>& labels) {
  if (labels.empty()) throw EmptyInput("majority baseline of an empty label list");
  std::array<std::size_t, 3> counts{};
  for (Answer a : labels) ++counts[static_cast<std::size_t>(a)];
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  MajorityBaseline out;
  out.label = static_cast<Answer>(best);
  out.accuracy = static_cast<double>(counts[best]) / static_cast<double>(labels.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i != best && counts[i] == counts[best]) out.tie = true;
  }
  return out;
}

namespace {

RungMetrics summarize(int rung, const std::vector<const EvalRecord*>& records) {
  RungMetrics m;
  m.rung = rung;
  m.records = records.size();
  std::array<std::size_t, 4> responses{};  // yes, no, unknown, invalid
  std::array<std::size_t, 3> truths{};
  std::array<std::size_t, 3> correct_by_truth{};
  std::vector<Answer> scored_truths;
  std::vector<Answer> all_truths;
  for (const EvalRecord* r : records) {
    all_truths.push_back(r->truth);
    if (r->transport_failure) {
      ++m.transport_failures;
      continue;
    }
    ++m.scored;
    scored_truths.push_back(r->truth);
    ++responses[static_cast<std::size_t>(r->verdict)];
    ++truths[static_cast<std::size_t>(r->truth)];
    if (r->score == Score::Correct) {
      ++m.correct;
      ++correct_by_truth[static_cast<std::size_t>(r->truth)];
    }
    if (r->invalid) ++m.invalid;
  }
  auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  m.accuracy = ratio(m.correct, m.scored);
  m.invalid_rate = ratio(m.invalid, m.scored);
  m.responses = {ratio(responses[0], m.scored), ratio(responses[1], m.scored), ratio(responses[2], m.scored),
                 ratio(responses[3], m.scored)};
  m.truths = {ratio(truths[0], m.scored), ratio(truths[1], m.scored), ratio(truths[2], m.scored), 0.0};
  m.per_label_accuracy = {ratio(correct_by_truth[0], truths[0]), ratio(correct_by_truth[1], truths[1]),
                          ratio(correct_by_truth[2], truths[2]), 0.0};
  if (!all_truths.empty()) m.majority = majority_baseline(scored_truths.empty() ? all_truths : scored_truths);
  std::size_t top = 0;
  for (std::size_t i = 1; i < responses.size(); ++i) {
    if (responses[i] > responses[top]) top = i;
  }
  static constexpr std::array<std::string_view, 4> kNames = {"yes", "no", "unknown", "invalid"};
  m.top_response = m.scored == 0 ? "" : std::string(kNames[top]);
  m.top_response_share = ratio(responses[top], m.scored);
  m.beats_majority = m.scored > 0 && m.accuracy > m.majority.accuracy;
  return m;
}

json distribution_json(const Distribution& d) {
  return json{{"yes", d.yes}, {"no", d.no}, {"unknown", d.unknown}, {"invalid", d.invalid}};
}

Distribution distribution_from(const json& j) {
  return Distribution{j.at("yes").get<double>(), j.at("no").get<double>(), j.at("unknown").get<double>(),
                      j.at("invalid").get<double>()};
}

json rung_json(const RungMetrics& m) {
  return json{{"rung", m.rung},
              {"records", m.records},
              {"scored", m.scored},
              {"correct", m.correct},
              {"invalid", m.invalid},
              {"transport_failures", m.transport_failures},
              {"accuracy", m.accuracy},
              {"invalid_rate", m.invalid_rate},
              {"responses", distribution_json(m.responses)},
              {"truths", distribution_json(m.truths)},
              {"per_label_accuracy", distribution_json(m.per_label_accuracy)},
              {"majority", json{{"label", std::string(to_token(m.majority.label))},
                                {"accuracy", m.majority.accuracy},
                                {"tie", m.majority.tie}}},
              {"top_response", m.top_response},
              {"top_response_share", m.top_response_share},
              {"beats_majority", m.beats_majority}};
}

RungMetrics rung_from(const json& j) {
  RungMetrics m;
  m.rung = j.at("rung").get<int>();
  m.records = j.at("records").get<std::size_t>();
  m.scored = j.at("scored").get<std::size_t>();
  m.correct = j.at("correct").get<std::size_t>();
  m.invalid = j.at("invalid").get<std::size_t>();
  m.transport_failures = j.at("transport_failures").get<std::size_t>();
  m.accuracy = j.at("accuracy").get<double>();
  m.invalid_rate = j.at("invalid_rate").get<double>();
  m.responses = distribution_from(j.at("responses"));
  m.truths = distribution_from(j.at("truths"));
  m.per_label_accuracy = distribution_from(j.at("per_label_accuracy"));
  const json& maj = j.at("majority");
  auto label = answer_from_token(maj.at("label").get<std::string>());
  if (!label) throw SchemaError("report: bad majority label");
  m.majority = MajorityBaseline{*label, maj.at("accuracy").get<double>(), maj.at("tie").get<bool>()};
  m.top_response = j.at("top_response").get<std::string>();
  m.top_response_share = j.at("top_response_share").get<double>();
  m.beats_majority = j.at("beats_majority").get<bool>();
  return m;
}

const char* rung_label(int rung) {
  switch (rung) {
    case 1: return "I";
    case 2: return "II";
    case 3: return "III";
    default: return "all";
  }
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

MetricsReport compute_metrics(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw EmptyInput("no records to summarize");
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::vector<const EvalRecord*>>> grouped;
  std::map<std::string, std::vector<const EvalRecord*>> all;
  for (const auto& r : records) {
    if (!grouped.count(r.responder_id)) order.push_back(r.responder_id);
    grouped[r.responder_id][r.rung].push_back(&r);
    all[r.responder_id].push_back(&r);
  }
  MetricsReport report;
  for (const auto& id : order) {
    ResponderMetrics rm;
    rm.responder_id = id;
    for (const auto& [rung, group] : grouped[id]) rm.rungs.push_back(summarize(rung, group));
    rm.overall = summarize(0, all[id]);
    report.responders.push_back(std::move(rm));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

json to_json(const EvalRecord& r) {
  return json{{"id", r.instance_id},
              {"rung", r.rung},
              {"responder", r.responder_id},
              {"prompt", r.prompt},
              {"raw_response", r.raw_response},
              {"matched_line", r.matched_line},
              {"verdict", std::string(to_token(r.verdict))},
              {"truth", std::string(to_token(r.truth))},
              {"score", std::string(to_token(r.score))},
              {"invalid", r.invalid},
              {"transport_failure", r.transport_failure},
              {"error", r.error},
              {"latency_ms", r.latency_ms},
              {"attempts", r.attempts},
              {"timestamp", r.timestamp}};
}

EvalRecord record_from_json(const json& j) {
  EvalRecord r;
  try {
    r.instance_id = j.at("id").get<std::string>();
    r.rung = j.at("rung").get<int>();
    r.responder_id = j.at("responder").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.raw_response = j.at("raw_response").get<std::string>();
    r.matched_line = j.at("matched_line").get<std::string>();
    auto verdict = verdict_from_token(j.at("verdict").get<std::string>());
    auto truth = answer_from_token(j.at("truth").get<std::string>());
    auto sc = score_from_token(j.at("score").get<std::string>());
    if (!verdict || !truth || !sc) throw SchemaError("record " + r.instance_id + ": bad verdict/truth/score token");
    r.verdict = *verdict;
    r.truth = *truth;
    r.score = *sc;
    r.invalid = j.at("invalid").get<bool>();
    r.transport_failure = j.at("transport_failure").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.latency_ms = j.at("latency_ms").get<double>();
    r.attempts = j.at("attempts").get<int>();
    r.timestamp = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("record: ") + e.what());
  }
  if (!r.transport_failure && r.score != score(r.verdict, r.truth)) {
    throw SchemaError("record " + r.instance_id + ": score disagrees with verdict and truth");
  }
  return r;
}

json to_json(const MetricsReport& report) {
  json responders = json::array();
  for (const auto& rm : report.responders) {
    json rungs = json::array();
    for (const auto& m : rm.rungs) rungs.push_back(rung_json(m));
    responders.push_back(json{{"responder", rm.responder_id}, {"rungs", rungs}, {"overall", rung_json(rm.overall)}});
  }
  return json{{"meta", report.meta}, {"responders", responders}};
}

MetricsReport report_from_json(const json& j) {
  MetricsReport report;
  try {
    report.meta = j.value("meta", json::object());
    for (const auto& rj : j.at("responders")) {
      ResponderMetrics rm;
      rm.responder_id = rj.at("responder").get<std::string>();
      for (const auto& m : rj.at("rungs")) rm.rungs.push_back(rung_from(m));
      rm.overall = rung_from(rj.at("overall"));
      report.responders.push_back(std::move(rm));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return report;
}

std::string format_report_table(const MetricsReport& report) {
  std::string out;
  char line[256];
  for (const auto& rm : report.responders) {
    out += "responder: " + rm.responder_id + "\n";
    std::snprintf(line, sizeof line, "%-5s %7s %7s %9s %9s %-8s %8s %-8s %6s %9s\n", "rung", "records", "scored",
                  "accuracy", "majority", "label", "invalid", "top", "share", "failures");
    out += line;
    auto row = [&](const RungMetrics& m) {
      std::snprintf(line, sizeof line, "%-5s %7zu %7zu %9.3f %9.3f %-8s %8.3f %-8s %6.3f %9zu\n", rung_label(m.rung),
                    m.records, m.scored, m.accuracy, m.majority.accuracy, std::string(to_token(m.majority.label)).c_str(),
                    m.invalid_rate, m.top_response.c_str(), m.top_response_share, m.transport_failures);
      out += line;
    };
    for (const auto& m : rm.rungs) row(m);
    row(rm.overall);
    out += "\n";
  }
  return out;
}

std::string format_accuracy_csv(const MetricsReport& report) {
  std::set<int> rungs;
  for (const auto& rm : report.responders) {
    for (const auto& m : rm.rungs) rungs.insert(m.rung);
  }
  std::string out = "responder";
  for (int rung : rungs) out += ",rung_" + std::to_string(rung);
  out += "\n";
  for (const auto& rm : report.responders) {
    std::string id = rm.responder_id;
    if (id.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      id = quoted + "\"";
    }
    out += id;
    for (int rung : rungs) {
      out += ",";
      for (const auto& m : rm.rungs) {
        if (m.rung != rung) continue;
        char cell[32];
        std::snprintf(cell, sizeof cell, "%.4f", m.accuracy);
        out += cell;
      }
    }
    out += "\n";
  }
  return out;
}

void write_records(const std::string& path, const std::vector<EvalRecord>& records) {
  if (records.empty()) throw EmptyInput("refusing to write an empty record list to " + path);
  std::string content;
  for (const auto& r : records) content += to_json(r).dump() + "\n";
  write_atomically(path, content);
}

std::vector<EvalRecord> read_records(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<EvalRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw SchemaError(path + ":" + std::to_string(number) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

void write_report(const std::string& dir, const MetricsReport& report) {
  if (report.responders.empty()) throw EmptyInput("refusing to write an empty report");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  write_atomically(dir + "/report.json", to_json(report).dump(2) + "\n");
  write_atomically(dir + "/report.txt", format_report_table(report));
  write_atomically(dir + "/accuracy.csv", format_accuracy_csv(report));
}

MetricsReport read_report(const std::string& path) {
  try {
    return report_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

}  // namespace epiladder
