#pragma once

// Possible-worlds engine: the full model of 2^n worlds, bound
// announcements, per-agent knowledge and simultaneous public answer rounds.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "epiladder/world.hpp"

namespace epiladder {

/// Dense set of worlds over {0,1}^n, one bit per world code.
class WorldSet {
 public:
  WorldSet() = default;
  static WorldSet all(int n);
  static WorldSet empty(int n);

  int agents() const noexcept { return n_; }
  std::uint64_t universe() const noexcept { return std::uint64_t{1} << n_; }
  bool contains(std::uint32_t code) const noexcept { return (words_[code >> 6] >> (code & 63)) & 1u; }
  bool contains(const World& w) const noexcept { return w.size() == n_ && contains(w.bits()); }
  void insert(std::uint32_t code) noexcept { words_[code >> 6] |= std::uint64_t{1} << (code & 63); }
  void erase(std::uint32_t code) noexcept { words_[code >> 6] &= ~(std::uint64_t{1} << (code & 63)); }
  std::size_t count() const noexcept;
  std::vector<World> worlds() const;

  /// Calls fn(code) for every member in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int bit = std::countr_zero(bits);
        fn(static_cast<std::uint32_t>(w * 64 + bit));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Surviving worlds, the common-knowledge observation matrix, and the
/// actual world. Values are immutable; every update returns a new state.
class EpistemicState {
 public:
  EpistemicState(WorldSet surviving, ObservationMatrix obs, World actual, int round_index);

  int agents() const noexcept { return actual_.size(); }
  const WorldSet& surviving() const noexcept { return surviving_; }
  const ObservationMatrix& observations() const noexcept { return obs_; }
  const World& actual() const noexcept { return actual_; }
  int round_index() const noexcept { return round_index_; }

 private:
  WorldSet surviving_;
  ObservationMatrix obs_;
  World actual_;
  int round_index_;
};

EpistemicState initial_state(int n, const ObservationMatrix& obs, const World& actual);

/// Removes worlds violating the bound. Throws InconsistentInstance if the
/// announcement is false in the actual world.
EpistemicState apply_bound(const EpistemicState& state, const Announcement& announcement);

/// True iff agent i cannot tell w from v: they agree on every coordinate
/// agent i observes.
bool indistinguishable(const World& w, const World& v, int agent, const ObservationMatrix& obs);

Answer agent_answer(const EpistemicState& state, int agent);

/// The answer agent i would give if w were the actual world. Throws
/// InconsistentInstance if w is not a surviving world.
Answer hypothetical_answer(const EpistemicState& state, const World& w, int agent);

struct RoundResult {
  std::vector<Answer> answers;
  EpistemicState next;
};

/// One simultaneous round: every agent answers against the current state,
/// then the joint answer vector is announced and every world that would
/// have produced a different vector is eliminated.
RoundResult round_update(const EpistemicState& state);

struct RoundRecord {
  std::vector<Answer> answers;
  std::size_t surviving_after = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

using RoundTrace = std::vector<RoundRecord>;

struct GroundTruth {
  Answer answer = Answer::Unknown;
  /// Public answers of rounds 1..j-1.
  RoundTrace trace;
  std::size_t initial_worlds = 0;
  std::size_t after_announcement = 0;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

/// Parameters the solver needs; everything narrative is left out.
struct SolverInput {
  ObservationMatrix obs;
  World actual;
  Announcement announcement;
  int queried = 0;
  int round = 1;
};

/// Builds the model, applies the bound, runs round-1 updates and returns
/// the queried agent's answer at the requested round.
GroundTruth solve(const SolverInput& input);

/// Runs `rounds` updates after the bound and returns every answer vector.
RoundTrace simulate_rounds(const ObservationMatrix& obs, const World& actual, const Announcement& announcement,
                           int rounds);

}  // namespace epiladder
