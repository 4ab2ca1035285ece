#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"
#include "epiladder/grid.hpp"
#include "epiladder/harness.hpp"

namespace epiladder {
namespace {

namespace fs = std::filesystem;

std::vector<LabeledInstance> desk_set() {
  auto insts = enumerate_rung_grid(desk_grid(Rung::I), Rung::I);
  auto r2 = enumerate_rung_grid(desk_grid(Rung::II), Rung::II);
  insts.insert(insts.end(), r2.begin(), r2.end());
  auto r3 = sample_rung3(40, 1, desk_grid(Rung::III));
  insts.insert(insts.end(), r3.begin(), r3.end());
  return attach_ground_truth(insts).items;
}

// Four No, three Yes and three Unknown labels.
std::vector<LabeledInstance> forty_percent_no() {
  std::vector<LabeledInstance> out;
  std::array<int, 3> want = {3, 4, 3};
  for (auto& item : desk_set()) {
    auto& left = want[static_cast<std::size_t>(item.label.answer)];
    if (left > 0) {
      --left;
      out.push_back(item);
    }
  }
  return out;
}

EvalRecord synthetic(std::mt19937_64& rng, int i) {
  EvalRecord r;
  r.instance_id = "inst-" + std::to_string(i);
  r.rung = 1 + static_cast<int>(rng() % 3);
  r.responder_id = rng() % 2 ? "constant:Yes" : "remote:model-x";
  r.prompt = "Prompt line one\nline \"two\" \xE2\x80\x99 " + std::to_string(rng());
  r.truth = static_cast<Answer>(rng() % 3);
  r.transport_failure = rng() % 10 == 0;
  if (r.transport_failure) {
    r.error = "connection refused";
    r.verdict = Verdict::Invalid;
    r.score = Score::Invalid;
    r.invalid = true;
  } else {
    r.verdict = static_cast<Verdict>(rng() % 4);
    r.raw_response = std::string(to_token(r.verdict)) + "\n\tbecause";
    r.matched_line = std::string(to_token(r.verdict));
    r.score = score(r.verdict, r.truth);
    r.invalid = r.verdict == Verdict::Invalid;
  }
  r.latency_ms = static_cast<double>(rng() % 100000) / 7.0;
  r.attempts = 1 + static_cast<int>(rng() % 4);
  r.timestamp = "2026-01-02T03:04:05.678Z";
  return r;
}

TEST(Responders, SelectorParsing) {
  EXPECT_EQ(parse_responder("oracle").kind, ResponderKind::Oracle);
  auto constant = parse_responder("constant:I don't know");
  EXPECT_EQ(constant.kind, ResponderKind::Constant);
  EXPECT_EQ(constant.constant_text, "I don't know");
  EXPECT_EQ(responder_id(constant), "constant:I don't know");
  auto scripted = parse_responder("scripted:/tmp/replies/model_a.jsonl");
  EXPECT_EQ(responder_id(scripted), "scripted:model_a");
  EXPECT_THROW(parse_responder("remote:missing"), ConfigError);
  EXPECT_THROW(parse_responder("telepathy"), ConfigError);

  nlohmann::json config = {{"responders",
                            {{"local", {{"kind", "remote"},
                                        {"endpoint", "http://127.0.0.1:9/v1/chat/completions"},
                                        {"model", "tiny-model"},
                                        {"auth_env", "EPILADDER_TEST_UNSET_TOKEN"},
                                        {"retry", {{"max_attempts", 2}}}}}}}};
  auto remote = parse_responder("remote:local", config);
  EXPECT_EQ(remote.kind, ResponderKind::Remote);
  EXPECT_EQ(remote.remote.model, "tiny-model");
  EXPECT_EQ(remote.remote.retry.max_attempts, 2);
  EXPECT_EQ(responder_id(remote), "local");
  ::unsetenv("EPILADDER_TEST_UNSET_TOKEN");
  EXPECT_THROW(make_responder(remote), CredentialError);
}

TEST(Eval, OracleIsPerfect) {
  const auto items = desk_set();
  auto oracle = make_responder(parse_responder("oracle"));
  const auto records = run_eval(items, *oracle);
  ASSERT_EQ(records.size(), items.size());
  const auto report = compute_metrics(records);
  ASSERT_EQ(report.responders.size(), 1u);
  const auto& overall = report.responders[0].overall;
  EXPECT_DOUBLE_EQ(overall.accuracy, 1.0);
  EXPECT_EQ(overall.invalid, 0u);
  EXPECT_EQ(report.responders[0].rungs.size(), 3u);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(records[i].instance_id, items[i].instance.id);
    EXPECT_EQ(records[i].latency_ms, 0.0);
    EXPECT_TRUE(records[i].timestamp.empty());
  }
  EXPECT_EQ(records, run_eval(items, *oracle));
}

TEST(Eval, ConstantResponderMatchesLabelShare) {
  const auto items = forty_percent_no();
  ASSERT_EQ(items.size(), 10u);
  auto constant = make_responder(parse_responder("constant:No"));
  const auto m = compute_metrics(run_eval(items, *constant)).responders[0].overall;
  EXPECT_DOUBLE_EQ(m.accuracy, 0.40);
  EXPECT_EQ(m.top_response, "no");
  EXPECT_DOUBLE_EQ(m.top_response_share, 1.0);
  EXPECT_EQ(m.majority.label, Answer::No);
  EXPECT_FALSE(m.beats_majority);
}

TEST(Eval, ScriptedFixture) {
  const auto items = forty_percent_no();
  const std::string path = ::testing::TempDir() + "/fixture_model.jsonl";
  {
    std::ofstream out(path);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string reply = i < 3 ? "Perhaps." : std::string(surface_form(items[i].label.answer)) + "\nreasoning";
      out << nlohmann::json{{"id", items[i].instance.id}, {"response", reply}}.dump() << "\n";
    }
  }
  auto scripted = make_responder(parse_responder("scripted:" + path));
  EXPECT_EQ(scripted->id(), "scripted:fixture_model");
  const auto m = compute_metrics(run_eval(items, *scripted)).responders[0].overall;
  EXPECT_DOUBLE_EQ(m.accuracy, 0.7);
  EXPECT_DOUBLE_EQ(m.invalid_rate, 0.3);
  EXPECT_DOUBLE_EQ(m.responses.invalid, 0.3);
}

TEST(Eval, MissingScriptedReplyIsTransportFailure) {
  auto items = forty_percent_no();
  const std::string path = ::testing::TempDir() + "/partial.jsonl";
  {
    std::ofstream out(path);
    out << nlohmann::json{{"id", items[0].instance.id}, {"response", "Yes"}}.dump() << "\n";
  }
  auto scripted = make_responder(parse_responder("scripted:" + path));
  const auto records = run_eval(items, *scripted);
  EXPECT_FALSE(records[0].transport_failure);
  EXPECT_TRUE(records[1].transport_failure);
  const auto m = compute_metrics(records).responders[0].overall;
  EXPECT_EQ(m.scored, 1u);
  EXPECT_EQ(m.transport_failures, 9u);
}

TEST(Eval, FunctionResponderSeesPrompt) {
  auto items = forty_percent_no();
  auto fn = make_function_responder("echo", [](const PromptBundle& p) {
    return p.text.find("round 1.") != std::string::npos ? "I don't know" : "No";
  });
  const auto records = run_eval(items, *fn);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(records[i].verdict, items[i].instance.round == 1 ? Verdict::Unknown : Verdict::No);
    EXPECT_EQ(records[i].prompt, render_for(items[i], {}).text);
  }
}

TEST(Majority, Examples) {
  auto labels = [](int y, int n, int u) {
    std::vector<Answer> out(y, Answer::Yes);
    out.insert(out.end(), n, Answer::No);
    out.insert(out.end(), u, Answer::Unknown);
    return out;
  };
  auto m = majority_baseline(labels(50, 30, 20));
  EXPECT_EQ(m.label, Answer::Yes);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.50);
  EXPECT_FALSE(m.tie);
  m = majority_baseline(labels(0, 0, 7));
  EXPECT_EQ(m.label, Answer::Unknown);
  EXPECT_DOUBLE_EQ(m.accuracy, 1.0);
  m = majority_baseline(labels(2, 5, 5));
  EXPECT_EQ(m.label, Answer::No);
  EXPECT_TRUE(m.tie);
  EXPECT_DOUBLE_EQ(m.accuracy, 5.0 / 12.0);
  EXPECT_THROW(majority_baseline({}), EmptyInput);
}

TEST(Metrics, DecompositionAndDistributions) {
  std::mt19937_64 rng(5);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 3000; ++i) records.push_back(synthetic(rng, i));
  const auto report = compute_metrics(records);
  ASSERT_EQ(report.responders.size(), 2u);
  for (const auto& rm : report.responders) {
    std::size_t total = 0;
    for (const auto& m : rm.rungs) total += m.records;
    EXPECT_EQ(total, rm.overall.records);
    auto all = rm.rungs;
    all.push_back(rm.overall);
    for (const auto& m : all) {
      const auto& t = m.truths;
      const auto& p = m.per_label_accuracy;
      EXPECT_NEAR(m.accuracy, t.yes * p.yes + t.no * p.no + t.unknown * p.unknown, 1e-9);
      EXPECT_NEAR(m.responses.yes + m.responses.no + m.responses.unknown + m.responses.invalid, 1.0, 1e-9);
      EXPECT_NEAR(t.yes + t.no + t.unknown, 1.0, 1e-9);
      EXPECT_EQ(m.scored + m.transport_failures, m.records);
      EXPECT_EQ(m.beats_majority, m.accuracy > m.majority.accuracy);
    }
  }
  EXPECT_THROW(compute_metrics({}), EmptyInput);
}

TEST(Records, RoundTripThousand) {
  std::mt19937_64 rng(8);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 1000; ++i) records.push_back(synthetic(rng, i));
  const std::string path = ::testing::TempDir() + "/records.jsonl";
  write_records(path, records);
  EXPECT_EQ(read_records(path), records);
  EXPECT_FALSE(fs::exists(path + ".tmp"));
}

TEST(Records, EmptyAndInconsistentInput) {
  const std::string path = ::testing::TempDir() + "/none.jsonl";
  fs::remove(path);
  EXPECT_THROW(write_records(path, {}), EmptyInput);
  EXPECT_FALSE(fs::exists(path));
  { std::ofstream out(path); }
  EXPECT_TRUE(read_records(path).empty());
  EXPECT_THROW(compute_metrics(read_records(path)), EmptyInput);

  std::mt19937_64 rng(2);
  auto j = to_json(synthetic(rng, 0));
  j["verdict"] = "yes";
  j["truth"] = "no";
  j["score"] = "correct";
  j["transport_failure"] = false;
  EXPECT_THROW(record_from_json(j), SchemaError);
  j.erase("score");
  EXPECT_THROW(record_from_json(j), SchemaError);
}

TEST(Report, JsonRoundTripAndTables) {
  std::mt19937_64 rng(13);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 200; ++i) records.push_back(synthetic(rng, i));
  auto report = compute_metrics(records);
  report.meta = {{"tool", "epiladder"}, {"seed", 13}};
  EXPECT_EQ(report_from_json(to_json(report)), report);

  const std::string dir = ::testing::TempDir() + "/report_dir";
  fs::remove_all(dir);
  write_report(dir, report);
  EXPECT_EQ(read_report(dir + "/report.json"), report);

  std::ifstream csv(dir + "/accuracy.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "responder,rung_1,rung_2,rung_3");
  std::string row;
  int rows = 0;
  while (std::getline(csv, row)) ++rows;
  EXPECT_EQ(rows, 2);
  const std::string table = format_report_table(report);
  EXPECT_NE(table.find("constant:Yes"), std::string::npos);
  EXPECT_NE(table.find("remote:model-x"), std::string::npos);
}

}  // namespace
}  // namespace epiladder
