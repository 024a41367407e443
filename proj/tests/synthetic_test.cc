#include "crn/synthetic.h"

#include <set>

#include "crn/errors.h"
#include "crn/log.h"
#include "gtest/gtest.h"

namespace crn {
namespace {

TEST(GenerateMdpTest, FrozenValues) {
  // From a standalone Python port of the generator.
  const TabularMdp mdp = GenerateMdp({2, 2, 2, 7});
  EXPECT_DOUBLE_EQ(mdp.transition(0, 0, 1)[0], 0.15036525649051624);
  EXPECT_DOUBLE_EQ(mdp.transition(1, 1, 1)[1], 0.17336536667803962);
  EXPECT_DOUBLE_EQ(mdp.reward(0, 0, 1), 0.41481997913911806);
  EXPECT_DOUBLE_EQ(mdp.reward(1, 1, 2), 0.46466415314740905);
}

TEST(GenerateMdpTest, ShapeAndInvariants) {
  const SyntheticSpec spec{7, 4, 20, 123};
  const TabularMdp mdp = GenerateMdp(spec);
  EXPECT_EQ(mdp.num_states(), 7);
  EXPECT_EQ(mdp.num_actions(), 4);
  EXPECT_EQ(mdp.horizon(), 20);
  EXPECT_EQ(mdp.start_state(), 0);
  for (double r : mdp.rewards()) {
    EXPECT_GE(r, 0.0);
    EXPECT_LT(r, 1.0);
  }
  EXPECT_EQ(mdp, GenerateMdp(spec));
  EXPECT_NE(mdp, GenerateMdp({7, 4, 20, 124}));
  EXPECT_THROW(GenerateMdp({0, 4, 20, 1}), ConfigError);
}

TEST(GenerateAgreeingPoliciesTest, FrozenValues) {
  const auto policies = GenerateAgreeingPolicies({2, 3, 3, 0}, 2, 1, 5);
  ASSERT_EQ(policies.size(), 2u);
  EXPECT_EQ(policies[0].actions(), (std::vector<int>{1, 0, 2, 0, 0, 0}));
  EXPECT_EQ(policies[1].actions(), (std::vector<int>{2, 1, 2, 0, 0, 0}));
}

TEST(GenerateAgreeingPoliciesTest, AgreeAfterDepthAndDistinct) {
  const SyntheticSpec spec{7, 4, 20, 9};
  const auto policies = GenerateAgreeingPolicies(spec, 100, 2, 9);
  ASSERT_EQ(policies.size(), 100u);
  std::set<std::vector<int>> distinct;
  for (const Policy& p : policies) {
    EXPECT_TRUE(PoliciesAgreeAfter(p, policies[0], 2));
    distinct.insert(p.actions());
  }
  EXPECT_EQ(distinct.size(), 100u);
}

TEST(GenerateAgreeingPoliciesTest, WarnsWhenPrefixesRunOut) {
  log::ScopedWarningCapture capture;
  // 2^(1*1) = 2 prefixes for 3 policies.
  const auto policies = GenerateAgreeingPolicies({1, 2, 3, 0}, 3, 1, 1);
  EXPECT_EQ(policies.size(), 3u);
  EXPECT_EQ(capture.messages().size(), 1u);
}

TEST(GenerateAgreeingPoliciesTest, Errors) {
  EXPECT_THROW(GenerateAgreeingPolicies({2, 2, 3, 0}, 0, 1, 1), ConfigError);
  EXPECT_THROW(GenerateAgreeingPolicies({2, 2, 3, 0}, 2, 4, 1), ConfigError);
  EXPECT_THROW(GenerateAgreeingPolicies({2, 2, 3, 0}, 2, -1, 1), ConfigError);
}

}  // namespace
}  // namespace crn
