#include "epiladder/kripke.hpp"

#include <bit>
#include <string>

#include "epiladder/errors.hpp"

namespace epiladder {
namespace {

std::uint32_t universe_mask(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

// Answer of `agent` at world code `at`, by enumerating every completion of
// the coordinates the agent does not observe.
Answer answer_at(const WorldSet& surviving, const ObservationMatrix& obs, std::uint32_t at, int agent) {
  const std::uint32_t seen = obs.row_mask(agent);
  const std::uint32_t hidden = universe_mask(obs.size()) & ~seen;
  const std::uint32_t base = at & seen;
  bool some_one = false;
  bool some_zero = false;
  std::uint32_t sub = 0;
  do {
    const std::uint32_t v = base | sub;
    if (surviving.contains(v)) {
      if ((v >> agent) & 1u) some_one = true;
      else some_zero = true;
      if (some_one && some_zero) return Answer::Unknown;
    }
    sub = (sub - hidden) & hidden;
  } while (sub != 0);
  if (some_one) return Answer::Yes;
  return Answer::No;
}

}  // namespace

WorldSet WorldSet::all(int n) {
  WorldSet s = empty(n);
  const std::uint64_t total = s.universe();
  for (std::size_t w = 0; w < s.words_.size(); ++w) {
    const std::uint64_t remaining = total - w * 64;
    s.words_[w] = remaining >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << remaining) - 1);
  }
  return s;
}

WorldSet WorldSet::empty(int n) {
  if (n < 1 || n > kMaxAgents) throw DimensionError("agent count " + std::to_string(n) + " out of range");
  WorldSet s;
  s.n_ = n;
  s.words_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
  return s;
}

std::size_t WorldSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<World> WorldSet::worlds() const {
  std::vector<World> out;
  out.reserve(count());
  for_each([&](std::uint32_t code) { out.emplace_back(n_, code); });
  return out;
}

EpistemicState::EpistemicState(WorldSet surviving, ObservationMatrix obs, World actual, int round_index)
    : surviving_(std::move(surviving)), obs_(std::move(obs)), actual_(actual), round_index_(round_index) {
  if (surviving_.agents() != actual_.size() || obs_.size() != actual_.size()) {
    throw DimensionError("state dimensions disagree");
  }
  if (!surviving_.contains(actual_)) throw InconsistentInstance("actual world is not among the surviving worlds");
}

EpistemicState initial_state(int n, const ObservationMatrix& obs, const World& actual) {
  if (n < 1 || n > kMaxAgents) throw DimensionError("agent count " + std::to_string(n) + " out of range");
  if (obs.size() != n) {
    throw DimensionError("observation matrix is " + std::to_string(obs.size()) + "x" + std::to_string(obs.size()) +
                         ", expected " + std::to_string(n));
  }
  if (actual.size() != n) {
    throw DimensionError("actual world has " + std::to_string(actual.size()) + " agents, expected " +
                         std::to_string(n));
  }
  return EpistemicState(WorldSet::all(n), obs, actual, 0);
}

EpistemicState apply_bound(const EpistemicState& state, const Announcement& announcement) {
  const int n = state.agents();
  if (announcement.value < 0 || announcement.value > n) {
    throw InconsistentInstance("bound value " + std::to_string(announcement.value) + " outside [0, " +
                               std::to_string(n) + "]");
  }
  if (!announcement.holds_for(state.actual().popcount())) {
    throw InconsistentInstance("untruthful bound: announcement would eliminate the actual world");
  }
  WorldSet next = WorldSet::empty(n);
  state.surviving().for_each([&](std::uint32_t code) {
    if (announcement.holds_for(std::popcount(code))) next.insert(code);
  });
  return EpistemicState(std::move(next), state.observations(), state.actual(), state.round_index());
}

bool indistinguishable(const World& w, const World& v, int agent, const ObservationMatrix& obs) {
  if (w.size() != v.size() || obs.size() != w.size()) throw DimensionError("world/matrix dimensions disagree");
  if (agent < 0 || agent >= obs.size()) throw DimensionError("agent index out of range");
  return ((w.bits() ^ v.bits()) & obs.row_mask(agent)) == 0;
}

Answer agent_answer(const EpistemicState& state, int agent) {
  if (agent < 0 || agent >= state.agents()) throw DimensionError("agent index out of range");
  return answer_at(state.surviving(), state.observations(), state.actual().bits(), agent);
}

Answer hypothetical_answer(const EpistemicState& state, const World& w, int agent) {
  if (agent < 0 || agent >= state.agents()) throw DimensionError("agent index out of range");
  if (w.size() != state.agents()) throw DimensionError("world size disagrees with state");
  if (!state.surviving().contains(w)) throw InconsistentInstance("world " + w.to_string() + " is not surviving");
  return answer_at(state.surviving(), state.observations(), w.bits(), agent);
}

RoundResult round_update(const EpistemicState& state) {
  const int n = state.agents();
  const WorldSet& surviving = state.surviving();
  const ObservationMatrix& obs = state.observations();

  std::vector<Answer> said(n);
  for (int i = 0; i < n; ++i) said[i] = agent_answer(state, i);

  // For each agent, bucket surviving worlds by the part the agent sees and
  // record which own-status values occur in each bucket (bit 0: a world
  // with status 1, bit 1: status 0). Each world's hypothetical answer is
  // then a table lookup.
  WorldSet next = surviving;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(surviving.universe()), 0);
  for (int i = 0; i < n; ++i) {
    const std::uint32_t mask = obs.row_mask(i);
    std::fill(seen.begin(), seen.end(), 0);
    surviving.for_each([&](std::uint32_t code) { seen[code & mask] |= ((code >> i) & 1u) ? 1u : 2u; });
    surviving.for_each([&](std::uint32_t code) {
      const std::uint8_t flags = seen[code & mask];
      const Answer a = flags == 1 ? Answer::Yes : flags == 2 ? Answer::No : Answer::Unknown;
      if (a != said[i]) next.erase(code);
    });
  }
  return RoundResult{std::move(said), EpistemicState(std::move(next), obs, state.actual(), state.round_index() + 1)};
}

RoundTrace simulate_rounds(const ObservationMatrix& obs, const World& actual, const Announcement& announcement,
                           int rounds) {
  EpistemicState state = apply_bound(initial_state(actual.size(), obs, actual), announcement);
  RoundTrace trace;
  trace.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    RoundResult step = round_update(state);
    trace.push_back(RoundRecord{std::move(step.answers), step.next.surviving().count()});
    state = std::move(step.next);
  }
  return trace;
}

GroundTruth solve(const SolverInput& input) {
  const int n = input.actual.size();
  if (input.queried < 0 || input.queried >= n) throw DimensionError("queried agent index out of range");
  if (input.round < 1) throw InconsistentInstance("queried round must be at least 1");

  GroundTruth truth;
  EpistemicState state = initial_state(n, input.obs, input.actual);
  truth.initial_worlds = state.surviving().count();
  state = apply_bound(state, input.announcement);
  truth.after_announcement = state.surviving().count();
  for (int r = 1; r < input.round; ++r) {
    RoundResult step = round_update(state);
    truth.trace.push_back(RoundRecord{std::move(step.answers), step.next.surviving().count()});
    state = std::move(step.next);
  }
  truth.answer = agent_answer(state, input.queried);
  return truth;
}

}  // namespace epiladder
