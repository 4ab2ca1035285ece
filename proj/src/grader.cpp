#include "epiladder/grader.hpp"

#include <array>
#include <cctype>

namespace epiladder {
namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

// UTF-8 encodings of apostrophe look-alikes: right/left single quotation
// marks and the modifier letter apostrophe.
constexpr std::array<std::string_view, 3> kApostrophes = {"\xE2\x80\x99", "\xE2\x80\x98", "\xCA\xBC"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view to_token(Verdict v) noexcept {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
    case Verdict::Invalid: return "invalid";
  }
  return "invalid";
}

std::optional<Verdict> verdict_from_token(std::string_view token) noexcept {
  if (token == "invalid") return Verdict::Invalid;
  if (auto a = answer_from_token(token)) return to_verdict(*a);
  return std::nullopt;
}

Verdict to_verdict(Answer a) noexcept {
  switch (a) {
    case Answer::Yes: return Verdict::Yes;
    case Answer::No: return Verdict::No;
    case Answer::Unknown: return Verdict::Unknown;
  }
  return Verdict::Invalid;
}

ParsedResponse parse_response(std::string_view raw, const GraderOptions& options) {
  ParsedResponse out;
  std::string_view line;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const auto nl = raw.find('\n', start);
    const auto candidate = trim(raw.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!candidate.empty()) {
      line = candidate;
      if (start > 0) out.notes.emplace_back("skipped leading empty lines");
      break;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (line.empty()) {
    out.notes.emplace_back("empty response");
    return out;
  }
  out.matched_line = std::string(line);

  std::string text(line);
  if (text.size() != raw.size()) out.notes.emplace_back("trimmed whitespace");
  if (!text.empty() && text.back() == '.') {
    text.pop_back();
    out.notes.emplace_back("removed trailing period");
  }
  for (auto apostrophe : kApostrophes) {
    for (auto pos = text.find(apostrophe); pos != std::string::npos; pos = text.find(apostrophe, pos + 1)) {
      text.replace(pos, apostrophe.size(), "'");
      out.notes.emplace_back("normalized apostrophe");
    }
  }
  if (options.case_insensitive) {
    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (text == "yes") out.verdict = Verdict::Yes;
    else if (text == "no") out.verdict = Verdict::No;
    else if (text == "i don't know") out.verdict = Verdict::Unknown;
  } else {
    if (text == "Yes") out.verdict = Verdict::Yes;
    else if (text == "No") out.verdict = Verdict::No;
    else if (text == "I don't know") out.verdict = Verdict::Unknown;
  }
  if (out.verdict == Verdict::Invalid) out.notes.emplace_back("not an accepted answer");
  return out;
}

std::string_view to_token(Score s) noexcept {
  switch (s) {
    case Score::Correct: return "correct";
    case Score::Incorrect: return "incorrect";
    case Score::Invalid: return "invalid";
  }
  return "invalid";
}

std::optional<Score> score_from_token(std::string_view token) noexcept {
  if (token == "correct") return Score::Correct;
  if (token == "incorrect") return Score::Incorrect;
  if (token == "invalid") return Score::Invalid;
  return std::nullopt;
}

Score score(Verdict verdict, Answer truth) noexcept {
  if (verdict == Verdict::Invalid) return Score::Invalid;
  return verdict == to_verdict(truth) ? Score::Correct : Score::Incorrect;
}

Score score(const ParsedResponse& parsed, Answer truth) noexcept { return score(parsed.verdict, truth); }

}  // namespace epiladder
