#include "epiladder/instance.hpp"

#include <fstream>

#include "epiladder/errors.hpp"

namespace epiladder {

using nlohmann::json;

int rung_number(Rung r) noexcept { return static_cast<int>(r); }

Rung rung_from_number(int number) {
  if (number < 1 || number > 3) throw ConfigError("rung must be 1, 2 or 3, got " + std::to_string(number));
  return static_cast<Rung>(number);
}

std::string_view default_setting(Rung r) noexcept { return r == Rung::I ? kMuddyChildren : kOlympicGymnasts; }

Label to_label(const GroundTruth& truth) {
  Label label;
  label.answer = truth.answer;
  label.trace.reserve(truth.trace.size());
  for (const auto& round : truth.trace) label.trace.push_back(round.answers);
  return label;
}

std::optional<std::string> validate_instance(const PuzzleInstance& inst) {
  if (inst.id.empty()) return "missing id";
  if (inst.n < 1 || inst.n > kMaxAgents) return "n out of range: n=" + std::to_string(inst.n);
  if (inst.statuses.size() != inst.n) return "statuses length mismatch: expected n=" + std::to_string(inst.n);
  if (inst.obs.size() != inst.n) return "observation_matrix size mismatch: expected n=" + std::to_string(inst.n);
  if (inst.queried < 0 || inst.queried >= inst.n) return "queried_agent out of range";
  if (inst.k < 0 || inst.k > inst.n) return "k out of range: k=" + std::to_string(inst.k);
  if (inst.statuses.popcount() != inst.k) {
    return "k mismatch: k=" + std::to_string(inst.k) + " but statuses has " + std::to_string(inst.statuses.popcount()) +
           " ones";
  }
  if (inst.bound.value < 0 || inst.bound.value > inst.n) {
    return "bound_value out of range: bound_value=" + std::to_string(inst.bound.value);
  }
  if (!inst.bound.holds_for(inst.k)) {
    return "untruthful bound: " + std::string(to_token(inst.bound.type)) + " bound_value=" +
           std::to_string(inst.bound.value) + " with k=" + std::to_string(inst.k);
  }
  if (inst.obs.observes(inst.queried, inst.queried)) return "queried agent observes itself: observation_matrix diagonal";
  if (inst.round < 1) return "round must be >= 1";
  if (!inst.names.empty() && static_cast<int>(inst.names.size()) != inst.n) return "names length mismatch";
  return std::nullopt;
}

void require_valid(const PuzzleInstance& inst) {
  if (auto problem = validate_instance(inst)) throw InconsistentInstance(inst.id + ": " + *problem);
}

SolverInput solver_input(const PuzzleInstance& inst) {
  return SolverInput{inst.obs, inst.statuses, inst.bound, inst.queried, inst.round};
}

GroundTruth ground_truth(const PuzzleInstance& inst) {
  require_valid(inst);
  return solve(solver_input(inst));
}

namespace {

json answers_to_json(const std::vector<Answer>& answers) {
  json out = json::array();
  for (Answer a : answers) out.push_back(std::string(to_token(a)));
  return out;
}

Answer answer_field(const json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
  auto a = answer_from_token(j.get<std::string>());
  if (!a) throw SchemaError(std::string(what) + " has unknown answer token '" + j.get<std::string>() + "'");
  return *a;
}

template <typename T>
T field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const PuzzleInstance& inst, const std::optional<Label>& label) {
  json j;
  j["id"] = inst.id;
  j["rung"] = rung_number(inst.rung);
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["bound_type"] = std::string(to_token(inst.bound.type));
  j["bound_value"] = inst.bound.value;
  j["round"] = inst.round;
  j["observation_matrix"] = inst.obs.to_rows();
  j["statuses"] = inst.statuses.statuses();
  j["queried_agent"] = inst.queried;
  j["setting"] = inst.setting;
  j["names"] = inst.names;
  j["seed"] = inst.seed;
  if (label) {
    j["ground_truth"] = std::string(to_token(label->answer));
    json trace = json::array();
    for (const auto& round : label->trace) trace.push_back(answers_to_json(round));
    j["trace"] = std::move(trace);
  } else {
    j["ground_truth"] = nullptr;
    j["trace"] = json::array();
  }
  return j;
}

InstanceLine instance_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("instance line must be a JSON object");
  InstanceLine line;
  PuzzleInstance& inst = line.instance;
  inst.id = field<std::string>(j, "id");
  try {
    inst.rung = rung_from_number(field<int>(j, "rung"));
  } catch (const ConfigError& e) {
    throw SchemaError(e.what());
  }
  inst.n = field<int>(j, "n");
  inst.k = field<int>(j, "k");
  auto bound_type = bound_type_from_token(field<std::string>(j, "bound_type"));
  if (!bound_type) throw SchemaError("bound_type must be \"lower\" or \"upper\"");
  inst.bound = Announcement{*bound_type, field<int>(j, "bound_value")};
  inst.round = field<int>(j, "round");
  try {
    inst.obs = ObservationMatrix::from_rows(field<std::vector<std::vector<int>>>(j, "observation_matrix"));
    inst.statuses = World::from_statuses(field<std::vector<int>>(j, "statuses"));
  } catch (const DimensionError& e) {
    throw SchemaError(inst.id + ": " + e.what());
  }
  inst.queried = field<int>(j, "queried_agent");
  inst.setting = field<std::string>(j, "setting");
  inst.names = field<std::vector<std::string>>(j, "names");
  inst.seed = field<std::uint64_t>(j, "seed");

  auto truth = j.find("ground_truth");
  if (truth != j.end() && !truth->is_null()) {
    Label label;
    label.answer = answer_field(*truth, "ground_truth");
    auto trace = j.find("trace");
    if (trace == j.end() || !trace->is_array()) throw SchemaError("trace must be a list");
    for (const auto& round : *trace) {
      if (!round.is_array()) throw SchemaError("trace entries must be lists");
      std::vector<Answer> answers;
      for (const auto& a : round) answers.push_back(answer_field(a, "trace entry"));
      label.trace.push_back(std::move(answers));
    }
    line.label = std::move(label);
  }
  return line;
}

void write_instances(const std::string& path, const std::vector<InstanceLine>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& line : lines) out << to_json(line.instance, line.label).dump() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<InstanceLine> read_instances(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<InstanceLine> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SchemaError(path + ":" + std::to_string(number) + ": " + e.what());
    }
    try {
      lines.push_back(instance_from_json(j));
    } catch (const SchemaError& e) {
      throw SchemaError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return lines;
}

}  // namespace epiladder
