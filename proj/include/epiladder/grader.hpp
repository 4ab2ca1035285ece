#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epiladder/world.hpp"

namespace epiladder {

enum class Verdict { Yes, No, Unknown, Invalid };

std::string_view to_token(Verdict v) noexcept;
std::optional<Verdict> verdict_from_token(std::string_view token) noexcept;
Verdict to_verdict(Answer a) noexcept;

struct GraderOptions {
  /// Accept "yes", "NO", "i don't know", ...
  bool case_insensitive = false;
};

struct ParsedResponse {
  Verdict verdict = Verdict::Invalid;
  /// First non-empty line with surrounding whitespace removed.
  std::string matched_line;
  std::vector<std::string> notes;
};

/// Reads only the first non-empty line. Accepts "Yes", "No" and
/// "I don't know" with surrounding whitespace, one trailing period and
/// curly apostrophes; everything else is Invalid.
ParsedResponse parse_response(std::string_view raw, const GraderOptions& options = {});

enum class Score { Correct, Incorrect, Invalid };

std::string_view to_token(Score s) noexcept;
std::optional<Score> score_from_token(std::string_view token) noexcept;

/// Invalid verdicts score Invalid, which counts as wrong in accuracy.
Score score(const ParsedResponse& parsed, Answer truth) noexcept;
Score score(Verdict verdict, Answer truth) noexcept;

}  // namespace epiladder
