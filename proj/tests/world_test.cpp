#include <gtest/gtest.h>

#include "epiladder/errors.hpp"
#include "epiladder/world.hpp"

namespace epiladder {
namespace {

TEST(World, ParseAndFormatUseAgentOrder) {
  World w = World::parse("01");
  EXPECT_EQ(w.size(), 2);
  EXPECT_FALSE(w[0]);
  EXPECT_TRUE(w[1]);
  EXPECT_EQ(w.to_string(), "01");
  EXPECT_EQ(w.popcount(), 1);
  EXPECT_EQ(w.statuses(), (std::vector<int>{0, 1}));
}

TEST(World, RejectsBadInput) {
  EXPECT_THROW(World::parse("012"), DimensionError);
  EXPECT_THROW(World::parse(""), DimensionError);
  EXPECT_THROW(World(2, 0b100), DimensionError);
  EXPECT_THROW(World(kMaxAgents + 1, 0), DimensionError);
}

TEST(World, WithFlipsOneAgent) {
  World w = World::parse("000");
  EXPECT_EQ(w.with(2, true).to_string(), "001");
  EXPECT_EQ(w.with(2, true).with(2, false), w);
}

TEST(ObservationMatrix, FullMinusDiagonal) {
  auto m = ObservationMatrix::full_minus_diagonal(3);
  EXPECT_TRUE(m.is_full_minus_diagonal());
  EXPECT_EQ(m.to_rows(), (std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  m.set(1, 1, true);
  EXPECT_FALSE(m.is_full_minus_diagonal());
}

TEST(ObservationMatrix, FromRowsValidates) {
  EXPECT_THROW(ObservationMatrix::from_rows({{0, 1}, {1}}), DimensionError);
  EXPECT_THROW(ObservationMatrix::from_rows({{0, 2}, {1, 0}}), DimensionError);
  auto m = ObservationMatrix::from_rows({{0, 1}, {0, 0}});
  EXPECT_TRUE(m.observes(0, 1));
  EXPECT_FALSE(m.observes(1, 0));
}

TEST(Tokens, RoundTrip) {
  for (Answer a : {Answer::Yes, Answer::No, Answer::Unknown}) EXPECT_EQ(answer_from_token(to_token(a)), a);
  EXPECT_EQ(surface_form(Answer::Unknown), "I don't know");
  EXPECT_FALSE(answer_from_token("maybe"));
  EXPECT_EQ(bound_type_from_token("upper"), BoundType::Upper);
  EXPECT_FALSE(bound_type_from_token("Upper"));
}

}  // namespace
}  // namespace epiladder
