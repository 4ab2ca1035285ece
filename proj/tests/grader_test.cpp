#include <gtest/gtest.h>

#include <random>

#include "epiladder/grader.hpp"

namespace epiladder {
namespace {

Verdict verdict(std::string_view raw, bool case_insensitive = false) {
  return parse_response(raw, {case_insensitive}).verdict;
}

TEST(Grader, AcceptedForms) {
  EXPECT_EQ(verdict("Yes"), Verdict::Yes);
  EXPECT_EQ(verdict("Yes."), Verdict::Yes);
  EXPECT_EQ(verdict("No"), Verdict::No);
  EXPECT_EQ(verdict("  No.  \n"), Verdict::No);
  EXPECT_EQ(verdict("I don't know"), Verdict::Unknown);
  EXPECT_EQ(verdict("\n  I don\xE2\x80\x99t know \nBecause I cannot see myself."), Verdict::Unknown);
  EXPECT_EQ(verdict("I don\xCA\xBCt know."), Verdict::Unknown);
  EXPECT_EQ(verdict("\r\nYes\r\nA muddy forehead is all I can infer."), Verdict::Yes);
}

TEST(Grader, RejectedForms) {
  for (std::string_view raw : {"", "   \n\t\n", "Probably yes", "Yes, because I reason so", "yes", "NO",
                               "i don't know", "Yes..", "Maybe", "\"Yes\"", "No!", "I do not know", "Yes No"}) {
    const auto parsed = parse_response(raw);
    EXPECT_EQ(parsed.verdict, Verdict::Invalid) << "'" << raw << "'";
    EXPECT_FALSE(parsed.notes.empty());
  }
  EXPECT_EQ(verdict("Because\nYes"), Verdict::Invalid);
}

TEST(Grader, CaseFlag) {
  EXPECT_EQ(verdict("yes", true), Verdict::Yes);
  EXPECT_EQ(verdict("NO.", true), Verdict::No);
  EXPECT_EQ(verdict("i DON'T know", true), Verdict::Unknown);
  EXPECT_EQ(verdict("probably yes", true), Verdict::Invalid);
}

TEST(Grader, MatchedLineAndNotes) {
  const auto parsed = parse_response("\n\n  Yes.  \nsince...");
  EXPECT_EQ(parsed.matched_line, "Yes.");
  EXPECT_EQ(parsed.verdict, Verdict::Yes);
  EXPECT_FALSE(parsed.notes.empty());
  EXPECT_TRUE(parse_response("No").notes.empty());
}

TEST(Grader, IdempotentOnMatchedLine) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> pieces = {"Yes", "No", "I don't know", "I don\xE2\x80\x99t know", ".", " ",
                                           "\n", "\t", "yes", "maybe", ",", "because", "\r\n"};
  for (int t = 0; t < 5000; ++t) {
    std::string raw;
    const int parts = static_cast<int>(rng() % 6);
    for (int p = 0; p < parts; ++p) raw += pieces[rng() % pieces.size()];
    for (bool ci : {false, true}) {
      const auto first = parse_response(raw, {ci});
      const auto second = parse_response(first.matched_line, {ci});
      EXPECT_EQ(first.verdict, second.verdict) << "'" << raw << "'";
      EXPECT_EQ(first.matched_line, second.matched_line);
    }
  }
}

TEST(Grader, SurfaceFormsRoundTrip) {
  for (Answer a : {Answer::Yes, Answer::No, Answer::Unknown}) {
    EXPECT_EQ(verdict(surface_form(a)), to_verdict(a));
    EXPECT_EQ(verdict_from_token(to_token(to_verdict(a))), to_verdict(a));
  }
  EXPECT_EQ(verdict_from_token("invalid"), Verdict::Invalid);
  EXPECT_FALSE(verdict_from_token("Yes"));
}

TEST(Scoring, Cases) {
  EXPECT_EQ(score(Verdict::No, Answer::No), Score::Correct);
  EXPECT_EQ(score(Verdict::Yes, Answer::No), Score::Incorrect);
  EXPECT_EQ(score(Verdict::Unknown, Answer::Yes), Score::Incorrect);
  EXPECT_EQ(score(Verdict::Invalid, Answer::Unknown), Score::Invalid);
  EXPECT_EQ(score(parse_response("I don't know"), Answer::Unknown), Score::Correct);
  for (Score s : {Score::Correct, Score::Incorrect, Score::Invalid}) EXPECT_EQ(score_from_token(to_token(s)), s);
  EXPECT_FALSE(score_from_token("right"));
}

}  // namespace
}  // namespace epiladder
