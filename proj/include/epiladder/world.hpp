#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace epiladder {

/// Largest supported agent count. The model stores one bit per world, so
/// 2^24 worlds is 2 MiB per state.
inline constexpr int kMaxAgents = 24;

/// A complete assignment of hidden statuses. Bit i is agent i's status
/// (1 = muddy / qualified).
class World {
 public:
  World() = default;
  World(int n, std::uint32_t bits);
  static World from_statuses(std::span<const int> statuses);
  /// Parses "0110"-style strings; character i is agent i.
  static World parse(std::string_view text);

  int size() const noexcept { return n_; }
  std::uint32_t bits() const noexcept { return bits_; }
  bool operator[](int agent) const noexcept { return (bits_ >> agent) & 1u; }
  int popcount() const noexcept { return std::popcount(bits_); }

  World with(int agent, bool status) const;
  std::vector<int> statuses() const;
  std::string to_string() const;

  friend bool operator==(const World&, const World&) = default;

 private:
  int n_ = 0;
  std::uint32_t bits_ = 0;
};

/// n x n binary matrix; entry (i, j) = 1 means agent i sees agent j's
/// status. Rows are stored as bit masks.
class ObservationMatrix {
 public:
  ObservationMatrix() = default;
  explicit ObservationMatrix(int n);
  static ObservationMatrix from_rows(const std::vector<std::vector<int>>& rows);
  /// Every agent sees everyone except itself.
  static ObservationMatrix full_minus_diagonal(int n);

  int size() const noexcept { return n_; }
  bool observes(int observer, int observed) const noexcept { return (rows_[observer] >> observed) & 1u; }
  std::uint32_t row_mask(int observer) const noexcept { return rows_[observer]; }
  void set(int observer, int observed, bool value);
  bool is_full_minus_diagonal() const noexcept;
  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const ObservationMatrix&, const ObservationMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> rows_;
};

enum class BoundType { Lower, Upper };

/// "At least q" (Lower) or "at most q" (Upper) agents hold the status.
struct Announcement {
  BoundType type = BoundType::Lower;
  int value = 0;

  bool holds_for(int count) const noexcept { return type == BoundType::Lower ? count >= value : count <= value; }
  friend bool operator==(const Announcement&, const Announcement&) = default;
};

enum class Answer { Yes, No, Unknown };

/// "yes" / "no" / "unknown", the serialized form.
std::string_view to_token(Answer a) noexcept;
std::optional<Answer> answer_from_token(std::string_view token) noexcept;
/// The literal a responder is expected to produce: "Yes", "No", "I don't know".
std::string_view surface_form(Answer a) noexcept;

std::string_view to_token(BoundType t) noexcept;
std::optional<BoundType> bound_type_from_token(std::string_view token) noexcept;

}  // namespace epiladder
