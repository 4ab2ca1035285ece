#include "epiladder/grid.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"

namespace epiladder {

using nlohmann::json;

GenerationGrid full_grid(Rung rung) {
  GenerationGrid g;
  if (rung == Rung::III) {
    g.name = "full-rung3";
    g.k = {0, 2};
    g.bound_types = {BoundType::Upper};
    g.q = IntRange{2, 2};
    g.matrix = MatrixPolicy::Random;
    g.count = 374;
  } else {
    g.name = "full-rung12";
  }
  return g;
}

GenerationGrid desk_grid(Rung rung) {
  GenerationGrid g;
  g.n = 4;
  g.rounds = {1, 5};
  if (rung == Rung::III) {
    g.name = "desk-rung3";
    g.n = 5;
    g.k = {0, 2};
    g.bound_types = {BoundType::Upper};
    g.q = IntRange{2, 2};
    g.rounds = {1, 6};
    g.matrix = MatrixPolicy::Random;
    g.count = 40;
  } else {
    g.name = "desk-rung12";
    g.k = {0, 4};
  }
  return g;
}

void check_grid(const GenerationGrid& g) {
  auto fail = [&](const std::string& what) { throw ConfigError("grid '" + g.name + "': " + what); };
  if (g.n < 1 || g.n > kMaxAgents) fail("n must be in [1, " + std::to_string(kMaxAgents) + "]");
  if (g.k.lo > g.k.hi || g.k.lo < 0 || g.k.hi > g.n) fail("k range must lie within [0, n]");
  if (g.q && (g.q->lo > g.q->hi || g.q->lo < 0 || g.q->hi > g.n)) fail("q range must lie within [0, n]");
  if (g.rounds.lo < 1 || g.rounds.lo > g.rounds.hi) fail("rounds must be a non-empty range starting at 1 or later");
  if (g.bound_types.empty()) fail("bound_types must not be empty");
  if (g.queried_status && *g.queried_status != 0 && *g.queried_status != 1) fail("queried_status must be 0 or 1");
  if (g.count < 0) fail("count must be non-negative");
}

namespace {

json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

IntRange range_from(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ConfigError(std::string("grid field '") + key + "' must be [lo, hi]");
  }
  return IntRange{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

json to_json(const GenerationGrid& g) {
  json j;
  j["name"] = g.name;
  j["n"] = g.n;
  j["k"] = range_json(g.k);
  json types = json::array();
  for (BoundType t : g.bound_types) types.push_back(std::string(to_token(t)));
  j["bound_types"] = types;
  j["q"] = g.q ? range_json(*g.q) : json(nullptr);
  j["rounds"] = range_json(g.rounds);
  j["matrix"] = g.matrix == MatrixPolicy::Random ? "random" : "full_minus_diagonal";
  j["queried_status"] = g.queried_status ? json(*g.queried_status) : json(nullptr);
  j["seed"] = g.seed;
  j["count"] = g.count;
  return j;
}

GenerationGrid grid_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("grid config must be a JSON object");
  GenerationGrid g;
  try {
    g.name = j.value("name", std::string("custom"));
    g.n = j.value("n", 10);
    g.k = j.contains("k") ? range_from(j["k"], "k") : IntRange{0, g.n};
    if (j.contains("bound_types")) {
      g.bound_types.clear();
      for (const auto& t : j["bound_types"]) {
        auto parsed = bound_type_from_token(t.get<std::string>());
        if (!parsed) throw ConfigError("bound_types entries must be \"lower\" or \"upper\"");
        g.bound_types.push_back(*parsed);
      }
    }
    if (j.contains("q") && !j["q"].is_null()) g.q = range_from(j["q"], "q");
    if (j.contains("rounds")) g.rounds = range_from(j["rounds"], "rounds");
    const std::string matrix = j.value("matrix", std::string("full_minus_diagonal"));
    if (matrix == "random") g.matrix = MatrixPolicy::Random;
    else if (matrix == "full_minus_diagonal") g.matrix = MatrixPolicy::FullMinusDiagonal;
    else throw ConfigError("matrix must be \"full_minus_diagonal\" or \"random\"");
    if (j.contains("queried_status") && !j["queried_status"].is_null()) g.queried_status = j["queried_status"].get<int>();
    g.seed = j.value("seed", std::uint64_t{0});
    g.count = j.value("count", 0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("grid config: ") + e.what());
  }
  check_grid(g);
  return g;
}

GenerationGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return grid_from_json(json::parse(buffer.str()));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string grid_hash(const GenerationGrid& grid) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(grid).dump())));
  return buf;
}

}  // namespace epiladder
