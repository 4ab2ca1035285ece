#include "epiladder/generate.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <set>
#include <thread>

#include "epiladder/errors.hpp"

namespace epiladder {
namespace {

// Lowest-index agents carry status 1, subject to agent 0's status.
World canonical_statuses(int n, int k, int queried_status) {
  std::uint32_t bits = 0;
  const int first = queried_status == 1 ? 0 : 1;
  for (int i = first; i < first + k; ++i) bits |= 1u << i;
  return World(n, bits);
}

std::vector<int> consistent_queried_statuses(const GenerationGrid& g, int k) {
  std::vector<int> out;
  for (int s : {0, 1}) {
    if (g.queried_status && *g.queried_status != s) continue;
    if (s == 1 && k < 1) continue;
    if (s == 0 && k > g.n - 1) continue;
    out.push_back(s);
  }
  return out;
}

IntRange q_range(const GenerationGrid& g, BoundType type, int k) {
  IntRange r = type == BoundType::Lower ? IntRange{0, k} : IntRange{k, g.n};
  if (g.q) {
    r.lo = std::max(r.lo, g.q->lo);
    r.hi = std::min(r.hi, g.q->hi);
  }
  return r;
}

std::string instance_key(const PuzzleInstance& inst) {
  std::string key = std::to_string(inst.k) + "/" + std::string(to_token(inst.bound.type)) + "/" +
                    std::to_string(inst.bound.value) + "/" + std::to_string(inst.round) + "/" +
                    inst.statuses.to_string() + "/";
  for (int i = 0; i < inst.n; ++i) key += std::to_string(inst.obs.row_mask(i)) + ",";
  return key;
}

}  // namespace

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ConfigError("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

ObservationMatrix sample_observation_matrix(std::mt19937_64& rng, int n) {
  ObservationMatrix m(n);
  std::uint64_t bits = 0;
  int left = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (left == 0) {
        bits = rng();
        left = 64;
      }
      m.set(i, j, bits & 1u);
      bits >>= 1;
      --left;
    }
  }
  m.set(0, 0, false);
  return m;
}

std::vector<PuzzleInstance> enumerate_rung_grid(const GenerationGrid& grid, Rung rung, const NamePool& pool) {
  check_grid(grid);
  if (rung == Rung::III) throw ConfigError("enumerate_rung_grid handles rungs I and II; use sample_rung3");
  if (grid.matrix != MatrixPolicy::FullMinusDiagonal) {
    throw ConfigError("grid '" + grid.name + "': rung I/II grids use the full observation matrix");
  }
  const ObservationMatrix obs = ObservationMatrix::full_minus_diagonal(grid.n);
  std::vector<PuzzleInstance> out;
  for (int k = grid.k.lo; k <= grid.k.hi; ++k) {
    for (BoundType type : grid.bound_types) {
      const IntRange qs = q_range(grid, type, k);
      for (int q = qs.lo; q <= qs.hi; ++q) {
        for (int s : consistent_queried_statuses(grid, k)) {
          for (int j = grid.rounds.lo; j <= grid.rounds.hi; ++j) {
            PuzzleInstance inst;
            inst.rung = rung;
            inst.id = "r" + std::to_string(rung_number(rung)) + "-n" + std::to_string(grid.n) + "-k" +
                      std::to_string(k) + "-" + std::string(to_token(type)) + "-q" + std::to_string(q) + "-s" +
                      std::to_string(s) + "-j" + std::to_string(j);
            inst.n = grid.n;
            inst.k = k;
            inst.bound = Announcement{type, q};
            inst.round = j;
            inst.obs = obs;
            inst.statuses = canonical_statuses(grid.n, k, s);
            inst.queried = 0;
            inst.setting = std::string(default_setting(rung));
            inst.seed = grid.seed;
            inst.names = assign_names(inst, pool, grid.seed ^ fnv1a(inst.id));
            out.push_back(std::move(inst));
          }
        }
      }
    }
  }
  if (out.empty()) throw EmptyInput("grid '" + grid.name + "' produces no instances");
  return out;
}

std::vector<PuzzleInstance> sample_rung3(int count, std::uint64_t seed, const GenerationGrid& grid,
                                         const NamePool& pool) {
  check_grid(grid);
  if (count < 1) throw ConfigError("rung III sample count must be at least 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t budget = std::max<std::uint64_t>(10000, 100ull * static_cast<std::uint64_t>(count));
  std::set<std::string> seen;
  std::vector<PuzzleInstance> out;
  for (std::uint64_t draw = 0; static_cast<int>(out.size()) < count; ++draw) {
    if (draw >= budget) {
      throw ConfigError("grid '" + grid.name + "': rejection budget of " + std::to_string(budget) +
                        " draws exhausted after " + std::to_string(out.size()) + " accepted instances");
    }
    PuzzleInstance inst;
    inst.rung = Rung::III;
    inst.n = grid.n;
    inst.k = grid.k.lo + static_cast<int>(uniform_below(rng, grid.k.hi - grid.k.lo + 1));
    const auto statuses = consistent_queried_statuses(grid, inst.k);
    const int queried_status = statuses.empty() ? -1 : statuses[uniform_below(rng, statuses.size())];
    const BoundType type = grid.bound_types[uniform_below(rng, grid.bound_types.size())];
    const IntRange qs = grid.q.value_or(IntRange{0, grid.n});
    const int q = qs.lo + static_cast<int>(uniform_below(rng, qs.hi - qs.lo + 1));
    inst.bound = Announcement{type, q};
    inst.round = grid.rounds.lo + static_cast<int>(uniform_below(rng, grid.rounds.hi - grid.rounds.lo + 1));
    inst.obs = grid.matrix == MatrixPolicy::Random ? sample_observation_matrix(rng, grid.n)
                                                   : ObservationMatrix::full_minus_diagonal(grid.n);
    if (queried_status < 0 || !inst.bound.holds_for(inst.k)) continue;
    inst.statuses = canonical_statuses(grid.n, inst.k, queried_status);
    inst.queried = 0;
    inst.setting = std::string(kOlympicGymnasts);
    inst.seed = seed;
    inst.id = "r3-seed" + std::to_string(seed) + "-d" + std::to_string(draw);
    if (validate_instance(inst) || !seen.insert(instance_key(inst)).second) continue;
    inst.names = assign_names(inst, pool, seed ^ fnv1a(inst.id));
    out.push_back(std::move(inst));
  }
  return out;
}

double LabelStats::fraction(Answer a) const noexcept {
  const std::size_t n = total();
  if (n == 0) return 0.0;
  const std::size_t c = a == Answer::Yes ? yes : a == Answer::No ? no : unknown;
  return static_cast<double>(c) / static_cast<double>(n);
}

LabeledSet attach_ground_truth(const std::vector<PuzzleInstance>& insts, unsigned workers) {
  for (const auto& inst : insts) require_valid(inst);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, insts.size()));

  std::vector<GroundTruth> truths(insts.size());
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    std::size_t i = w;
    try {
      for (; i < insts.size(); i += workers) truths[i] = solve(solver_input(insts[i]));
    } catch (const Error& e) {
      errors[w] = std::make_exception_ptr(InconsistentInstance(insts[i].id + ": " + e.what()));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  LabeledSet set;
  set.items.reserve(insts.size());
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const Answer a = truths[i].answer;
    if (a == Answer::Yes) ++set.stats.yes;
    else if (a == Answer::No) ++set.stats.no;
    else ++set.stats.unknown;
    set.items.push_back(LabeledInstance{insts[i], to_label(truths[i])});
  }
  return set;
}

}  // namespace epiladder
