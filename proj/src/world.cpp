#include "epiladder/world.hpp"

#include "epiladder/errors.hpp"

namespace epiladder {
namespace {

void check_agent_count(int n) {
  if (n < 1 || n > kMaxAgents) {
    throw DimensionError("agent count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxAgents) + "]");
  }
}

std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

}  // namespace

World::World(int n, std::uint32_t bits) : n_(n), bits_(bits) {
  check_agent_count(n);
  if ((bits & ~full_mask(n)) != 0) throw DimensionError("world has bits set beyond agent count");
}

World World::from_statuses(std::span<const int> statuses) {
  const int n = static_cast<int>(statuses.size());
  check_agent_count(n);
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (statuses[i] != 0 && statuses[i] != 1) throw DimensionError("status entries must be 0 or 1");
    if (statuses[i] == 1) bits |= 1u << i;
  }
  return World(n, bits);
}

World World::parse(std::string_view text) {
  std::vector<int> statuses;
  for (char c : text) {
    if (c != '0' && c != '1') throw DimensionError("world string must contain only 0/1");
    statuses.push_back(c - '0');
  }
  return from_statuses(statuses);
}

World World::with(int agent, bool status) const {
  std::uint32_t bits = status ? (bits_ | (1u << agent)) : (bits_ & ~(1u << agent));
  return World(n_, bits);
}

std::vector<int> World::statuses() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = (*this)[i] ? 1 : 0;
  return out;
}

std::string World::to_string() const {
  std::string out(n_, '0');
  for (int i = 0; i < n_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

ObservationMatrix::ObservationMatrix(int n) : n_(n), rows_(n, 0u) { check_agent_count(n); }

ObservationMatrix ObservationMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  ObservationMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw DimensionError("observation matrix must be square");
    for (int j = 0; j < n; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) throw DimensionError("observation matrix entries must be 0 or 1");
      m.set(i, j, rows[i][j] == 1);
    }
  }
  return m;
}

ObservationMatrix ObservationMatrix::full_minus_diagonal(int n) {
  ObservationMatrix m(n);
  for (int i = 0; i < n; ++i) m.rows_[i] = full_mask(n) & ~(1u << i);
  return m;
}

void ObservationMatrix::set(int observer, int observed, bool value) {
  if (value) rows_[observer] |= 1u << observed;
  else rows_[observer] &= ~(1u << observed);
}

bool ObservationMatrix::is_full_minus_diagonal() const noexcept {
  for (int i = 0; i < n_; ++i) {
    if (rows_[i] != (full_mask(n_) & ~(1u << i))) return false;
  }
  return true;
}

std::vector<std::vector<int>> ObservationMatrix::to_rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_, 0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[i][j] = observes(i, j) ? 1 : 0;
  }
  return out;
}

std::string_view to_token(Answer a) noexcept {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Answer> answer_from_token(std::string_view token) noexcept {
  if (token == "yes") return Answer::Yes;
  if (token == "no") return Answer::No;
  if (token == "unknown") return Answer::Unknown;
  return std::nullopt;
}

std::string_view surface_form(Answer a) noexcept {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Unknown: return "I don't know";
  }
  return "I don't know";
}

std::string_view to_token(BoundType t) noexcept { return t == BoundType::Lower ? "lower" : "upper"; }

std::optional<BoundType> bound_type_from_token(std::string_view token) noexcept {
  if (token == "lower") return BoundType::Lower;
  if (token == "upper") return BoundType::Upper;
  return std::nullopt;
}

}  // namespace epiladder
