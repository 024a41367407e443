#include "crn/estimators.h"

#include <cmath>
#include <vector>

#include "crn/errors.h"
#include "crn/log.h"
#include "gtest/gtest.h"
#include "test_mdps.h"

namespace crn {
namespace {

using ::crn::testing::DifferenceMoments;
using ::crn::testing::PairMoments;
using ::crn::testing::RandomMdp;
using ::crn::testing::RandomPolicy;
using ::crn::testing::ResampleFirstSteps;

PairMoments OracleXI(const TabularMdp& m, const Policy& a, const Policy& b) {
  return DifferenceMoments(m, a, b, [](int) { return false; });
}
PairMoments OracleXD(const TabularMdp& m, const Policy& a, const Policy& b) {
  return DifferenceMoments(m, a, b, [](int) { return true; });
}
PairMoments OracleXDD(const TabularMdp& m, const Policy& a, const Policy& b,
                      int d) {
  return DifferenceMoments(m, a, b, [d](int t) { return t > d; });
}

TEST(EstimatorKindTest, SchemesAndNames) {
  EXPECT_EQ(EstimatorKind::XI().ToScheme(), SeedScheme::Independent());
  EXPECT_EQ(EstimatorKind::XD().ToScheme(), SeedScheme::Dependent());
  EXPECT_EQ(EstimatorKind::XDD(3).ToScheme(), SeedScheme::DepthDependent(3));
  EXPECT_EQ(EstimatorKind::XI().ToString(), "XI");
  EXPECT_EQ(EstimatorKind::XD().ToString(), "XD");
  EXPECT_EQ(EstimatorKind::XDD(3).ToString(), "XDD(3)");
  EXPECT_THROW(EstimatorKind::XDD(-1), ConfigError);
}

TEST(CollectStatsTest, KnownSample) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const EstimatorStats s = CollectStats(v);
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.std_error, std::sqrt(5.0 / 12.0));
  EXPECT_THROW(CollectStats(std::vector<double>{1.0}), InsufficientData);
}

TEST(PairOracleTest, CounterexampleClosedForm) {
  // XI variance: var(pi1) + var(pi2) = (r0-r2)^2/4 + (r1-r3)^2/4.
  // XD variance: var(pi1) + var(pi2) - 2 cov.
  const CounterexampleSetup ce = CounterexampleMdp(2, 4, 3, 2);
  const double cov = AnalyticCounterexampleCovariance(2, 4, 3, 2);
  EXPECT_DOUBLE_EQ(cov, -0.5);
  const double var1 = 0.25, var2 = 1.0;
  EXPECT_NEAR(OracleXI(ce.mdp, ce.pi1, ce.pi2).variance, var1 + var2, 1e-15);
  EXPECT_NEAR(OracleXD(ce.mdp, ce.pi1, ce.pi2).variance,
              var1 + var2 - 2 * cov, 1e-15);
  EXPECT_NEAR(OracleXI(ce.mdp, ce.pi1, ce.pi2).mean,
              Utility(ce.mdp, ce.pi1) - Utility(ce.mdp, ce.pi2), 1e-15);
}

TEST(EnumerationTest, MatchesPairOracle) {
  struct Shape {
    int s, a, h, d;
  };
  const Shape shapes[] = {{2, 2, 2, 1}, {2, 2, 3, 1}, {3, 2, 2, 1},
                          {3, 2, 3, 2}, {2, 3, 3, 1}, {3, 2, 3, 0}};
  unsigned seed = 1;
  for (const Shape& sh : shapes) {
    for (int rep = 0; rep < 3; ++rep, ++seed) {
      const TabularMdp mdp = RandomMdp(sh.s, sh.a, sh.h, seed);
      const Policy p1 = RandomPolicy(sh.s, sh.a, sh.h, seed + 100);
      const Policy p2 = ResampleFirstSteps(p1, sh.d, seed + 200);
      const ExactEstimatorMoments m = EnumerateEstimatorMoments(mdp, p1, p2, sh.d);
      const PairMoments xi = OracleXI(mdp, p1, p2);
      EXPECT_NEAR(m.mean_difference, xi.mean, 1e-12);
      EXPECT_NEAR(m.var_xi, xi.variance, 1e-12);
      EXPECT_NEAR(m.var_xd, OracleXD(mdp, p1, p2).variance, 1e-12);
      EXPECT_NEAR(m.var_xdd, OracleXDD(mdp, p1, p2, sh.d).variance, 1e-12);
      EXPECT_LE(m.var_xdd, m.var_xi + 1e-12);
    }
  }
}

TEST(EnumerationTest, CounterexampleValues) {
  const CounterexampleSetup ce = CounterexampleMdp(2, 4, 3, 2);
  const ExactEstimatorMoments m =
      EnumerateEstimatorMoments(ce.mdp, ce.pi1, ce.pi2, 2);
  EXPECT_NEAR(m.var_xi, 1.25, 1e-15);
  EXPECT_NEAR(m.var_xd, 2.25, 1e-15);
  EXPECT_NEAR(m.var_xdd, 1.25, 1e-15);
  EXPECT_NEAR(m.mean_difference, 2.5 - 3.0, 1e-15);
}

TEST(EnumerationTest, SupportLimit) {
  const TabularMdp mdp = RandomMdp(3, 2, 3, 5);
  const Policy p = RandomPolicy(3, 2, 3, 6);
  EXPECT_THROW(EnumerateEstimatorMoments(mdp, p, p, 1, 10), ConfigError);
}

TEST(BackwardDrawTest, SharedPairAcrossKinds) {
  const TabularMdp mdp = RandomMdp(4, 2, 5, 9);
  const BackwardPair a = SampleBackwardPair(mdp, 3, "salt");
  const BackwardPair b = SampleBackwardPair(mdp, 3, "salt");
  EXPECT_EQ(a.m1.next, b.m1.next);
  EXPECT_EQ(a.m2.next, b.m2.next);
  EXPECT_NE(a.m1.next, SampleBackwardPair(mdp, 4, "salt").m1.next);
  const Policy p1 = RandomPolicy(4, 2, 5, 10);
  const Policy p2 = ResampleFirstSteps(p1, 2, 11);
  EXPECT_DOUBLE_EQ(
      EstimateFromPair(mdp, p1, p2, EstimatorKind::XD(), a),
      UtilityOnSuccessors(mdp, a.m1, p1) - UtilityOnSuccessors(mdp, a.m1, p2));
  EXPECT_DOUBLE_EQ(
      EstimateFromPair(mdp, p1, p2, EstimatorKind::XI(), a),
      UtilityOnSuccessors(mdp, a.m1, p1) - UtilityOnSuccessors(mdp, a.m2, p2));
  EXPECT_DOUBLE_EQ(EstimateFromPair(mdp, p1, p2, EstimatorKind::XDD(2), a),
                   UtilityOnSuccessors(mdp, a.m1, p1) -
                       UtilityOnSuccessors(
                           mdp, SpliceSuccessors(a.m2, a.m1, 2), p2));
}

// Empirical mean and variance of every estimator and both processes, against
// the pair oracle.
TEST(DrawBatchTest, MomentsMatchOracle) {
  const TabularMdp mdp = RandomMdp(4, 3, 5, 21);
  const Policy p1 = RandomPolicy(4, 3, 5, 22);
  const Policy p2 = ResampleFirstSteps(p1, 2, 23);
  const std::size_t n = 20000;
  const struct {
    EstimatorKind kind;
    PairMoments exact;
  } cases[] = {{EstimatorKind::XI(), OracleXI(mdp, p1, p2)},
               {EstimatorKind::XD(), OracleXD(mdp, p1, p2)},
               {EstimatorKind::XDD(2), OracleXDD(mdp, p1, p2, 2)}};
  for (const auto& c : cases) {
    for (Process process : {Process::kBackward, Process::kForward}) {
      const auto draws = DrawBatch(mdp, p1, p2, c.kind, process, n, "moments");
      ASSERT_EQ(draws.size(), n);
      EXPECT_EQ(draws[0].simulation_index, 1u);
      const EstimatorStats s = CollectStats(draws);
      EXPECT_NEAR(s.mean, c.exact.mean, 5 * s.std_error) << c.kind.ToString();
      // Sample variance of n draws: standard error roughly var * sqrt(2/n),
      // inflated for heavy tails.
      EXPECT_NEAR(s.variance, c.exact.variance,
                  6 * c.exact.variance * std::sqrt(2.0 / n) + 1e-12)
          << c.kind.ToString();
    }
  }
}

TEST(DrawForwardTest, DependentUsesSameSeedsForBothPolicies) {
  const TabularMdp mdp = RandomMdp(3, 2, 4, 1);
  const Policy p = RandomPolicy(3, 2, 4, 2);
  for (std::uint64_t j = 1; j <= 20; ++j) {
    EXPECT_EQ(DrawForward(mdp, p, p, EstimatorKind::XD(), j, "s").value, 0.0);
  }
}

TEST(CheckPoliciesTest, WarnsWhenPoliciesDisagreeLate) {
  const TabularMdp mdp = RandomMdp(3, 2, 4, 1);
  const Policy p1 = Policy::Constant(3, 2, 4, 0);
  const Policy p2 = Policy::Constant(3, 2, 4, 1);
  {
    log::ScopedWarningCapture capture;
    DrawBatch(mdp, p1, p2, EstimatorKind::XDD(2), Process::kBackward, 5, "s");
    EXPECT_EQ(capture.messages().size(), 1u);
  }
  {
    log::ScopedWarningCapture capture;
    DrawBatch(mdp, p1, p2, EstimatorKind::XDD(4), Process::kBackward, 5, "s");
    EXPECT_TRUE(capture.messages().empty());
  }
  EXPECT_THROW(DrawBackward(mdp, p1, p2, EstimatorKind::XDD(5), 1, "s"),
               ConfigError);
  EXPECT_THROW(DrawBackward(mdp, p1, Policy::Constant(3, 2, 3, 0),
                            EstimatorKind::XI(), 1, "s"),
               ConfigError);
}

TEST(CounterexampleTest, EmpiricalCovariance) {
  const CounterexampleSetup ce = CounterexampleMdp(2, 4, 3, 2);
  const int n = 100000;
  std::vector<double> u1(n), u2(n);
  for (int j = 1; j <= n; ++j) {
    const BackwardPair pair = SampleBackwardPair(ce.mdp, j, "cov");
    u1[j - 1] = UtilityOnSuccessors(ce.mdp, pair.m1, ce.pi1);
    u2[j - 1] = UtilityOnSuccessors(ce.mdp, pair.m1, ce.pi2);
  }
  double m1 = 0, m2 = 0;
  for (int i = 0; i < n; ++i) {
    m1 += u1[i];
    m2 += u2[i];
  }
  m1 /= n;
  m2 /= n;
  double cov = 0;
  for (int i = 0; i < n; ++i) cov += (u1[i] - m1) * (u2[i] - m2);
  cov /= n - 1;
  // |U1 - E U1| |U2 - E U2| = 0.5 * 1 always, so the product has sd 0.5.
  EXPECT_NEAR(cov, -0.5, 5 * 0.5 / std::sqrt(n));
}

}  // namespace
}  // namespace crn
