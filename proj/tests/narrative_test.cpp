#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"
#include "epiladder/grid.hpp"
#include "epiladder/names.hpp"
#include "epiladder/narrative.hpp"

namespace epiladder {
namespace {

PuzzleInstance two_agent(int round) {
  PuzzleInstance inst;
  inst.id = "fig2-j" + std::to_string(round);
  inst.rung = Rung::I;
  inst.n = 2;
  inst.k = 1;
  inst.bound = {BoundType::Lower, 1};
  inst.round = round;
  inst.obs = ObservationMatrix::full_minus_diagonal(2);
  inst.statuses = World::parse("01");
  inst.setting = "muddy_children";
  return inst;
}

const Setting& muddy() { return TemplateSet::builtin().setting("muddy_children"); }
const Setting& gymnasts() { return TemplateSet::builtin().setting("olympic_gymnasts"); }

PromptBundle render(const PuzzleInstance& inst, const RenderOptions& options = {}) {
  return render_prompt(inst, to_label(ground_truth(inst)).trace, TemplateSet::builtin().setting(inst.setting), options);
}

TEST(Names, RungOneIsPositional) {
  auto inst = two_agent(1);
  EXPECT_EQ(assign_names(inst, NamePool::builtin(), 1), (std::vector<std::string>{"child 0", "child 1"}));
}

TEST(Names, FameContradictsStatus) {
  const NamePool pool = NamePool::builtin();
  const std::set<std::string> famous(pool.famous.begin(), pool.famous.end());
  const std::set<std::string> generic(pool.generic.begin(), pool.generic.end());
  auto insts = enumerate_rung_grid(desk_grid(Rung::II), Rung::II);
  for (const auto& inst : insts) {
    ASSERT_EQ(inst.names.size(), static_cast<std::size_t>(inst.n));
    EXPECT_EQ(std::set<std::string>(inst.names.begin(), inst.names.end()).size(), inst.names.size()) << inst.id;
    const std::string& self = inst.names[inst.queried];
    if (inst.statuses[inst.queried]) {
      EXPECT_TRUE(generic.count(self)) << inst.id;
    } else {
      EXPECT_TRUE(famous.count(self)) << inst.id;
    }
    for (int i = 0; i < inst.n; ++i) {
      if (i != inst.queried) EXPECT_TRUE(generic.count(inst.names[i])) << inst.id;
    }
  }
}

TEST(Names, SeedDeterminesAssignment) {
  PuzzleInstance inst = two_agent(1);
  inst.rung = Rung::II;
  inst.n = 6;
  inst.obs = ObservationMatrix::full_minus_diagonal(6);
  inst.statuses = World::parse("011000");
  inst.k = 2;
  const NamePool pool = NamePool::builtin();
  EXPECT_EQ(assign_names(inst, pool, 7), assign_names(inst, pool, 7));
  EXPECT_NE(assign_names(inst, pool, 7), assign_names(inst, pool, 8));
}

TEST(Names, PoolErrors) {
  EXPECT_THROW(NamePool::parse(R"({"famous": [], "generic": ["a"]})"), ConfigError);
  EXPECT_THROW(NamePool::parse(R"({"famous": ["a"], "generic": ["a", "b"]})"), ConfigError);
  EXPECT_THROW(NamePool::parse(R"({"famous": ["a"], "generic": ["b", "b"]})"), ConfigError);
  EXPECT_THROW(NamePool::parse("not json"), ConfigError);
  PuzzleInstance inst = two_agent(1);
  inst.rung = Rung::II;
  inst.statuses = World::parse("11");
  inst.k = 2;
  const NamePool tiny = NamePool::parse(R"({"famous": ["Star"], "generic": ["Solo"]})");
  EXPECT_THROW(assign_names(inst, tiny, 1), ConfigError);
  EXPECT_THROW(NamePool::load("/nonexistent/names.json"), IoError);
}

TEST(History, TwoAgentTrace) {
  const std::vector<std::string> names = {"child 0", "child 1"};
  const std::vector<std::vector<Answer>> trace = {{Answer::Unknown, Answer::Yes}};
  EXPECT_EQ(render_history(trace, 1, names), "Public answers so far: none. No rounds have taken place yet.");
  EXPECT_EQ(render_history(trace, 2, names),
            "Public answers so far:\nRound 1: child 0: \"I don't know\", child 1: \"Yes\"");
  EXPECT_THROW(render_history(trace, 3, names), InconsistentInstance);
}

TEST(History, FixpointRoundsRepeatVerbatim) {
  PuzzleInstance inst = two_agent(4);
  inst.k = 0;
  inst.statuses = World::parse("00");
  inst.bound = {BoundType::Lower, 0};
  const auto trace = to_label(ground_truth(inst)).trace;
  const std::string history = render_history(trace, 4, {"child 0", "child 1"});
  const std::string line = "child 0: \"I don't know\", child 1: \"I don't know\"";
  for (int r = 1; r <= 3; ++r) {
    EXPECT_NE(history.find("Round " + std::to_string(r) + ": " + line), std::string::npos) << history;
  }
}

TEST(Prompt, TwoAgentContent) {
  const auto bundle = render(two_agent(1));
  EXPECT_NE(bundle.text.find("At least 1"), std::string::npos);
  EXPECT_NE(bundle.text.find("- child 1 is muddy"), std::string::npos);
  EXPECT_NE(bundle.text.find("You are child 0"), std::string::npos);
  EXPECT_NE(bundle.text.find("No rounds have taken place yet."), std::string::npos);
  EXPECT_EQ(bundle.text.find("child 0 is"), std::string::npos);
  EXPECT_EQ(bundle.round_prefix, 0);
  EXPECT_EQ(bundle.sections.protocol, muddy().protocol_symmetric);

  const auto later = render(two_agent(2));
  EXPECT_EQ(later.round_prefix, 1);
  EXPECT_NE(later.text.find("Round 1: child 0: \"I don't know\", child 1: \"Yes\""), std::string::npos);
  EXPECT_NE(later.text.find("It is now round 2."), std::string::npos);
}

TEST(Prompt, EmptyObservationRow) {
  PuzzleInstance inst = two_agent(1);
  inst.obs = ObservationMatrix::from_rows({{0, 0}, {1, 0}});
  const auto bundle = render(inst);
  EXPECT_NE(bundle.sections.observations.find(muddy().observations_none), std::string::npos);
  EXPECT_NE(bundle.text.find("child 0: 0 0\nchild 1: 1 0"), std::string::npos);
  const auto sentences = render(inst, {ObservationStyle::Sentences});
  EXPECT_NE(sentences.text.find("child 0 cannot see anyone's forehead."), std::string::npos);
  EXPECT_NE(sentences.text.find("child 1 can see the forehead of child 0."), std::string::npos);
}

TEST(Prompt, ObservationsMatchTheMatrix) {
  const TemplateSet templates = TemplateSet::builtin();
  for (const auto& inst : sample_rung3(40, 11, desk_grid(Rung::III))) {
    const auto bundle = render(inst);
    const Setting& s = templates.setting(inst.setting);
    for (int j = 0; j < inst.n; ++j) {
      if (j == inst.queried) continue;
      const std::string line = "- " + s.assertion(inst.names[j], inst.statuses[j]);
      const bool listed = bundle.sections.observations.find(line + "\n") != std::string::npos ||
                          bundle.sections.observations.ends_with(line);
      EXPECT_EQ(listed, inst.obs.observes(inst.queried, j)) << inst.id << " agent " << j;
    }
  }
}

TEST(Prompt, SettingsChangeTextButNotTruth) {
  auto r1 = enumerate_rung_grid(desk_grid(Rung::I), Rung::I);
  auto r2 = enumerate_rung_grid(desk_grid(Rung::II), Rung::II);
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const auto t1 = ground_truth(r1[i]);
    const auto t2 = ground_truth(r2[i]);
    EXPECT_EQ(t1.answer, t2.answer);
    EXPECT_NE(render(r1[i]).text, render(r2[i]).text);
  }
}

TEST(LeakScanner, FindsPlantedStatements) {
  EXPECT_TRUE(find_status_leaks("Nothing to see here.", muddy(), "child 0").empty());
  EXPECT_FALSE(find_status_leaks("By the way, CHILD 0 IS MUDDY.", muddy(), "child 0").empty());
  EXPECT_FALSE(find_status_leaks("Honestly, you are clean", muddy(), "child 0").empty());
  EXPECT_TRUE(find_status_leaks("child 10 is muddy", muddy(), "child 1").empty());
  EXPECT_FALSE(find_status_leaks("Simone Biles did not qualify for the final.", gymnasts(), "Simone Biles").empty());
  EXPECT_TRUE(find_status_leaks("Lee Park qualified for the final.", gymnasts(), "Simone Biles").empty());
}

TEST(Placeholders, FillAndReject) {
  EXPECT_EQ(fill_placeholders("{a} and {b_c}", {{"a", "x"}, {"b_c", "y"}}), "x and y");
  EXPECT_EQ(fill_placeholders("braces {} and {Upper} stay", {}), "braces {} and {Upper} stay");
  EXPECT_THROW(fill_placeholders("{missing}", {}), ConfigError);
}

TEST(Templates, EveryGeneratedInstanceRenders) {
  const std::regex slot(R"(\{[a-z_]+\})");
  std::vector<PuzzleInstance> all = enumerate_rung_grid(full_grid(Rung::I), Rung::I);
  for (auto& inst : enumerate_rung_grid(full_grid(Rung::II), Rung::II)) all.push_back(std::move(inst));
  for (auto& inst : sample_rung3(374, 0, full_grid(Rung::III))) all.push_back(std::move(inst));
  auto labeled = attach_ground_truth(all);
  for (const auto& item : labeled.items) {
    const Setting& s = TemplateSet::builtin().setting(item.instance.setting);
    for (auto style : {ObservationStyle::Matrix, ObservationStyle::Sentences}) {
      PromptBundle bundle;
      ASSERT_NO_THROW(bundle = render_prompt(item.instance, item.label.trace, s, {style})) << item.instance.id;
      EXPECT_FALSE(std::regex_search(bundle.text, slot)) << item.instance.id;
      const std::string self =
          item.instance.names.empty() ? s.role + " " + std::to_string(item.instance.queried)
                                      : item.instance.names[item.instance.queried];
      EXPECT_TRUE(find_status_leaks(bundle.text, s, self).empty()) << item.instance.id;
    }
  }
}

TEST(Templates, DirectoryMatchesBuiltin) {
  const auto loaded = TemplateSet::load(std::string(EPILADDER_SOURCE_DIR) + "/data/templates");
  EXPECT_EQ(loaded.setting_ids(), TemplateSet::builtin().setting_ids());
  EXPECT_EQ(loaded.setting("olympic_gymnasts").body, gymnasts().body);
  EXPECT_THROW(TemplateSet::load("/nonexistent"), IoError);
  EXPECT_THROW(TemplateSet::builtin().setting("pirates"), ConfigError);
}

}  // namespace
}  // namespace epiladder
