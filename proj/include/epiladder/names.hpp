#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epiladder {

struct PuzzleInstance;

/// Display names for the gymnast setting. Famous names go to a queried
/// agent whose status contradicts its fame.
struct NamePool {
  std::vector<std::string> famous;
  std::vector<std::string> generic;

  static const NamePool& builtin();
  static NamePool load(const std::string& path);
  static NamePool parse(const std::string& json_text);
  void check() const;
};

/// Rung I gets positional labels ("child 0", ...). Rungs II and III give
/// the queried agent a famous name when it did not qualify and a generic
/// one otherwise; everybody else gets distinct generic names.
std::vector<std::string> assign_names(const PuzzleInstance& inst, const NamePool& pool, std::uint64_t seed);

}  // namespace epiladder
