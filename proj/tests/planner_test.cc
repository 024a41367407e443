#include "crn/planner.h"

#include <vector>

#include "crn/errors.h"
#include "crn/log.h"
#include "gtest/gtest.h"
#include "test_mdps.h"

namespace crn {
namespace {

using ::crn::testing::RandomMdp;
using ::crn::testing::RandomPolicy;
using ::crn::testing::ResampleFirstSteps;

std::vector<Policy> AgreeingPolicies(int m, int depth, unsigned seed) {
  const Policy base = RandomPolicy(5, 3, 6, seed);
  std::vector<Policy> out;
  for (int i = 0; i < m; ++i) {
    out.push_back(ResampleFirstSteps(base, depth, seed + 1 + i));
  }
  return out;
}

TEST(PlanningConfigTest, Validate) {
  PlanningConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.num_simulations = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PlanningConfig();
  c.depth_limit = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PlanningConfig();
  c.exploration_constant = -1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PlanningConfig();
  c.rollout_policy = "greedy";
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(SelectBestPolicyTest, EstimatesAreForwardProcessMeans) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 1);
  const std::vector<Policy> policies = AgreeingPolicies(6, 2, 10);
  const SeedScheme scheme = SeedScheme::DepthDependent(2);
  const int n = 7;
  const PolicySelectionReport report =
      SelectBestPolicy(mdp, policies, n, scheme, "sel");
  const SeedDeriver deriver("sel");
  ASSERT_EQ(report.estimated_utilities.size(), policies.size());
  int best = 0;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
      sum += EvaluateReturn(mdp, policies[i], scheme, j, deriver);
    }
    EXPECT_NEAR(report.estimated_utilities[i], sum / n, 1e-12);
    if (sum / n > report.estimated_utilities[best] + 1e-12) best = i;
  }
  EXPECT_EQ(report.chosen_index, best);
  EXPECT_DOUBLE_EQ(report.true_utility_of_chosen,
                   Utility(mdp, policies[report.chosen_index]));
}

TEST(SelectBestPolicyTest, SweepMatchesIndividualCalls) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 2);
  const std::vector<Policy> policies = AgreeingPolicies(8, 2, 20);
  const std::vector<int> sweep = {1, 3, 4, 16};
  for (const SeedScheme& scheme :
       {SeedScheme::Independent(), SeedScheme::Dependent(),
        SeedScheme::DepthDependent(2)}) {
    const auto reports = SelectBestPolicySweep(mdp, policies, sweep, scheme, "s");
    ASSERT_EQ(reports.size(), sweep.size());
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const auto single = SelectBestPolicy(mdp, policies, sweep[k], scheme, "s");
      EXPECT_EQ(reports[k].chosen_index, single.chosen_index);
      EXPECT_EQ(reports[k].estimated_utilities, single.estimated_utilities);
    }
  }
}

TEST(SelectBestPolicyTest, TiesGoToLowestIndex) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 3);
  const Policy p = RandomPolicy(5, 3, 6, 4);
  const std::vector<Policy> policies = {p, p, p};
  const auto report =
      SelectBestPolicy(mdp, policies, 5, SeedScheme::Dependent(), "tie");
  EXPECT_EQ(report.chosen_index, 0);
}

TEST(SelectBestPolicyTest, ConvergesToOptimum) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 5);
  const std::vector<Policy> policies = AgreeingPolicies(5, 2, 30);
  double best = -1e9;
  for (const Policy& p : policies) best = std::max(best, Utility(mdp, p));
  const auto report =
      SelectBestPolicy(mdp, policies, 20000, SeedScheme::Dependent(), "conv");
  EXPECT_DOUBLE_EQ(report.true_utility_of_chosen, best);
}

TEST(SelectBestPolicyTest, Errors) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 6);
  const std::vector<Policy> none;
  EXPECT_THROW(SelectBestPolicy(mdp, none, 3, SeedScheme::Dependent(), "e"),
               ConfigError);
  const std::vector<Policy> one = {RandomPolicy(5, 3, 6, 1)};
  EXPECT_THROW(SelectBestPolicy(mdp, one, 0, SeedScheme::Dependent(), "e"),
               ConfigError);
}

TEST(SelectBestPolicyTest, WarnsOnDisagreementAfterDepth) {
  const TabularMdp mdp = RandomMdp(5, 3, 6, 7);
  const std::vector<Policy> policies = AgreeingPolicies(4, 3, 40);
  log::ScopedWarningCapture capture;
  SelectBestPolicy(mdp, policies, 2, SeedScheme::DepthDependent(3), "w");
  EXPECT_TRUE(capture.messages().empty());
  SelectBestPolicy(mdp, policies, 2, SeedScheme::DepthDependent(1), "w");
  EXPECT_FALSE(capture.messages().empty());
}

}  // namespace
}  // namespace crn
