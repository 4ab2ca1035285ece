#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epiladder/instance.hpp"

namespace epiladder {

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool contains(int v) const noexcept { return v >= lo && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

enum class MatrixPolicy { FullMinusDiagonal, Random };

/// Parameter ranges for a generated set. With no explicit `q` range a
/// Lower bound ranges over [0, k] and an Upper bound over [k, n].
struct GenerationGrid {
  std::string name;
  int n = 10;
  IntRange k{0, 10};
  std::vector<BoundType> bound_types{BoundType::Lower};
  std::optional<IntRange> q;
  IntRange rounds{1, 11};
  MatrixPolicy matrix = MatrixPolicy::FullMinusDiagonal;
  /// Forces the queried agent's status when set.
  std::optional<int> queried_status;
  std::uint64_t seed = 0;
  /// Target size for randomly sampled sets.
  int count = 0;

  friend bool operator==(const GenerationGrid&, const GenerationGrid&) = default;
};

/// Grids behind `--grid full`.
GenerationGrid full_grid(Rung rung);
/// Small grids for quick desk runs (`--grid desk`).
GenerationGrid desk_grid(Rung rung);

void check_grid(const GenerationGrid& grid);

nlohmann::json to_json(const GenerationGrid& grid);
GenerationGrid grid_from_json(const nlohmann::json& j);
GenerationGrid load_grid(const std::string& path);

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string grid_hash(const GenerationGrid& grid);

}  // namespace epiladder
