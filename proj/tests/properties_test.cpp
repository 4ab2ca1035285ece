#include <gtest/gtest.h>

#include <random>

#include "epiladder/instance.hpp"
#include "support/invariants.hpp"

namespace epiladder {
namespace {

TEST(Properties, RunInvariantsOnRandomModels) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    auto c = testing::random_case(rng, 1, 7);
    ASSERT_EQ(testing::check_run(c), "");
  }
}

TEST(Properties, PermutationEquivariance) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    auto c = testing::random_case(rng, 2, 7);
    ASSERT_EQ(testing::check_permutation(c, testing::random_permutation(rng, c.actual.size())), "");
  }
}

TEST(Properties, IndistinguishabilityIsAnEquivalence) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    auto c = testing::random_case(rng, 1, 4);
    ASSERT_EQ(testing::check_equivalence(c.obs, rng), "");
  }
  for (int t = 0; t < 40; ++t) {
    auto c = testing::random_case(rng, 6, 8);
    ASSERT_EQ(testing::check_equivalence(c.obs, rng), "");
  }
}

TEST(Properties, SolveIsDeterministic) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    auto c = testing::random_case(rng, 1, 8);
    SolverInput in{c.obs, c.actual, c.bound, 0, c.rounds};
    ASSERT_EQ(solve(in), solve(in));
  }
}

TEST(Properties, NarrativeDoesNotAffectGroundTruth) {
  PuzzleInstance a;
  a.id = "a";
  a.rung = Rung::I;
  a.n = 4;
  a.k = 2;
  a.bound = {BoundType::Lower, 1};
  a.round = 3;
  a.obs = ObservationMatrix::full_minus_diagonal(4);
  a.statuses = World::parse("0110");
  a.setting = "muddy_children";
  PuzzleInstance b = a;
  b.id = "b";
  b.rung = Rung::II;
  b.setting = "olympic_gymnasts";
  b.names = {"Simone Biles", "Avery Collins", "Jordan Pike", "Riley Brooks"};
  EXPECT_EQ(ground_truth(a), ground_truth(b));
}

}  // namespace
}  // namespace epiladder
