#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "epiladder/kripke.hpp"
#include "epiladder/world.hpp"

namespace epiladder {

enum class Rung { I = 1, II = 2, III = 3 };

int rung_number(Rung r) noexcept;
Rung rung_from_number(int number);

inline constexpr std::string_view kMuddyChildren = "muddy_children";
inline constexpr std::string_view kOlympicGymnasts = "olympic_gymnasts";

/// Setting id a rung is rendered in by default.
std::string_view default_setting(Rung r) noexcept;

/// The tuple (n, k, t, q, j, O) plus the concrete statuses and narrative
/// metadata. Agent 0 is always the queried agent for generated sets.
struct PuzzleInstance {
  std::string id;
  Rung rung = Rung::I;
  int n = 0;
  int k = 0;
  Announcement bound;
  int round = 1;
  ObservationMatrix obs;
  World statuses;
  int queried = 0;
  std::string setting;
  std::vector<std::string> names;
  std::uint64_t seed = 0;

  friend bool operator==(const PuzzleInstance&, const PuzzleInstance&) = default;
};

/// The part of a GroundTruth that is stored with an instance: the answer
/// and the public answer vectors of rounds 1..j-1.
struct Label {
  Answer answer = Answer::Unknown;
  std::vector<std::vector<Answer>> trace;

  friend bool operator==(const Label&, const Label&) = default;
};

Label to_label(const GroundTruth& truth);

struct LabeledInstance {
  PuzzleInstance instance;
  Label label;

  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

/// Returns an empty optional when every invariant holds, otherwise the
/// first violation ("k mismatch: ...", "untruthful bound: ...", ...).
std::optional<std::string> validate_instance(const PuzzleInstance& inst);

/// Throws InconsistentInstance carrying the id and violation.
void require_valid(const PuzzleInstance& inst);

SolverInput solver_input(const PuzzleInstance& inst);
GroundTruth ground_truth(const PuzzleInstance& inst);

// One JSONL line per instance. Unlabeled instances carry
// `"ground_truth": null` and an empty trace.
nlohmann::json to_json(const PuzzleInstance& inst, const std::optional<Label>& label);

struct InstanceLine {
  PuzzleInstance instance;
  std::optional<Label> label;
};

InstanceLine instance_from_json(const nlohmann::json& j);

void write_instances(const std::string& path, const std::vector<InstanceLine>& lines);
std::vector<InstanceLine> read_instances(const std::string& path);

}  // namespace epiladder
