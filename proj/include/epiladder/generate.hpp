#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "epiladder/grid.hpp"
#include "epiladder/instance.hpp"
#include "epiladder/names.hpp"

namespace epiladder {

/// Every valid combination of the grid for rung I or II, in a fixed order
/// (k, bound type, q, queried status, round).
std::vector<PuzzleInstance> enumerate_rung_grid(const GenerationGrid& grid, Rung rung,
                                                const NamePool& pool = NamePool::builtin());

/// Rung III: observation matrices with i.i.d. uniform entries (the queried
/// agent never observes itself), rejection-sampled until `count` distinct
/// consistent instances exist. Throws ConfigError when the rejection
/// budget runs out.
std::vector<PuzzleInstance> sample_rung3(int count, std::uint64_t seed, const GenerationGrid& grid,
                                         const NamePool& pool = NamePool::builtin());

/// Draws one n x n matrix with i.i.d. fair entries and (0, 0) cleared.
ObservationMatrix sample_observation_matrix(std::mt19937_64& rng, int n);

/// Uniform integer in [0, bound) without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

struct LabelStats {
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t unknown = 0;

  std::size_t total() const noexcept { return yes + no + unknown; }
  double fraction(Answer a) const noexcept;
};

struct LabeledSet {
  std::vector<LabeledInstance> items;
  LabelStats stats;
};

/// Solves every instance. Work is split over `workers` threads; results
/// keep input order.
LabeledSet attach_ground_truth(const std::vector<PuzzleInstance>& insts, unsigned workers = 0);

std::uint64_t fnv1a(std::string_view text) noexcept;

}  // namespace epiladder
