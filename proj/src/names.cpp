#include "epiladder/names.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epiladder/data.hpp"
#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"
#include "epiladder/instance.hpp"

namespace epiladder {

NamePool NamePool::parse(const std::string& json_text) {
  NamePool pool;
  try {
    auto j = nlohmann::json::parse(json_text);
    pool.famous = j.at("famous").get<std::vector<std::string>>();
    pool.generic = j.at("generic").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("name pool: ") + e.what());
  }
  pool.check();
  return pool;
}

const NamePool& NamePool::builtin() {
  static const NamePool pool = parse(std::string(*builtin_data("names.json")));
  return pool;
}

NamePool NamePool::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open name pool " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void NamePool::check() const {
  if (famous.empty() || generic.empty()) throw ConfigError("name pool: famous and generic lists must be non-empty");
  std::set<std::string> generic_set(generic.begin(), generic.end());
  if (generic_set.size() != generic.size()) throw ConfigError("name pool: duplicate generic name");
  for (const auto& name : famous) {
    if (generic_set.count(name)) throw ConfigError("name pool: '" + name + "' is both famous and generic");
  }
}

std::vector<std::string> assign_names(const PuzzleInstance& inst, const NamePool& pool, std::uint64_t seed) {
  std::vector<std::string> names(inst.n);
  if (inst.rung == Rung::I) {
    for (int i = 0; i < inst.n; ++i) names[i] = "child " + std::to_string(i);
    return names;
  }
  pool.check();
  const bool famous_queried = !inst.statuses[inst.queried];
  const std::size_t generic_needed = static_cast<std::size_t>(inst.n - (famous_queried ? 1 : 0));
  if (pool.generic.size() < generic_needed) {
    throw ConfigError("name pool has " + std::to_string(pool.generic.size()) + " generic names, need " +
                      std::to_string(generic_needed));
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> generic = pool.generic;
  // Fisher-Yates with an explicit bounded draw keeps the order identical
  // across standard libraries.
  for (std::size_t i = generic.size(); i > 1; --i) std::swap(generic[i - 1], generic[uniform_below(rng, i)]);
  std::size_t next = 0;
  for (int i = 0; i < inst.n; ++i) {
    if (i == inst.queried && famous_queried) {
      names[i] = pool.famous[uniform_below(rng, pool.famous.size())];
    } else {
      names[i] = generic[next++];
    }
  }
  return names;
}

}  // namespace epiladder
