#include "crn/distribution.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "crn/errors.h"
#include "crn/random.h"
#include "gtest/gtest.h"

namespace crn {
namespace {

TEST(InverseCdfTest, PicksIntervalContainingU) {
  const std::vector<double> p = {0.2, 0.3, 0.5};
  EXPECT_EQ(InverseCdf(p, 0.0), 0);
  EXPECT_EQ(InverseCdf(p, 0.199), 0);
  EXPECT_EQ(InverseCdf(p, 0.2), 1);
  EXPECT_EQ(InverseCdf(p, 0.49), 1);
  EXPECT_EQ(InverseCdf(p, 0.5), 2);
  EXPECT_EQ(InverseCdf(p, 0.999999), 2);
}

TEST(InverseCdfTest, SkipsZeroMassEntries) {
  const std::vector<double> p = {0.0, 1.0, 0.0};
  EXPECT_EQ(InverseCdf(p, 0.0), 1);
  EXPECT_EQ(InverseCdf(p, 1.0 - 0x1.0p-53), 1);
}

TEST(InverseCdfTest, UnnormalizedWeights) {
  const std::vector<double> p = {1.0, 3.0};
  EXPECT_EQ(InverseCdf(p, 0.24), 0);
  EXPECT_EQ(InverseCdf(p, 0.26), 1);
}

TEST(InverseCdfTest, RejectsBadDistributions) {
  EXPECT_THROW(InverseCdf(std::vector<double>{0.5, -0.1}, 0.1),
               InvalidDistribution);
  EXPECT_THROW(InverseCdf(std::vector<double>{0.0, 0.0}, 0.1),
               InvalidDistribution);
  EXPECT_THROW(InverseCdf(std::vector<double>{NAN, 1.0}, 0.1),
               InvalidDistribution);
  EXPECT_THROW(InverseCdf(std::vector<double>{}, 0.1), InvalidDistribution);
}

TEST(InverseCdfTest, EmpiricalFrequencies) {
  const std::vector<double> p = {0.1, 0.6, 0.3};
  SplitMix64 rng(77);
  std::vector<int> counts(3, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[InverseCdf(p, rng.NextUnit())];
  for (int i = 0; i < 3; ++i) {
    const double sd = std::sqrt(p[i] * (1 - p[i]) / n);
    EXPECT_NEAR(static_cast<double>(counts[i]) / n, p[i], 5 * sd) << i;
  }
}

// Poisson CDF from log-space pmf terms.
double PoissonCdf(double mean, int k) {
  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    total += std::exp(i * std::log(mean) - std::lgamma(i + 1.0) - mean);
  }
  return total;
}

TEST(PoissonInverseCdfTest, MatchesCdfOracle) {
  for (double mean : {0.05, 1.0, 2.5, 12.0, 80.0}) {
    for (double u : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999}) {
      const int k = PoissonInverseCdf(mean, u, 1 << 20);
      EXPECT_GT(PoissonCdf(mean, k), u) << mean << " " << u;
      if (k > 0) {
        EXPECT_LE(PoissonCdf(mean, k - 1), u) << mean << " " << u;
      }
    }
  }
}

TEST(PoissonInverseCdfTest, CapAndDegenerateInputs) {
  EXPECT_EQ(PoissonInverseCdf(5.0, 0.999, 3), 3);
  EXPECT_EQ(PoissonInverseCdf(0.0, 0.9, 10), 0);
  EXPECT_EQ(PoissonInverseCdf(5.0, 0.9, 0), 0);
  EXPECT_THROW(PoissonInverseCdf(INFINITY, 0.5, 10), DomainError);
}

TEST(PoissonInverseCdfTest, LargeMeanApproximation) {
  const double mean = 2000.0;
  EXPECT_NEAR(PoissonInverseCdf(mean, 0.5, 1 << 20), mean, 2.0);
  const double hi = PoissonInverseCdf(mean, 0.975, 1 << 20);
  EXPECT_NEAR(hi, mean + 1.96 * std::sqrt(mean), 3.0);
}

TEST(BoxMullerTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(BoxMuller(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(BoxMuller(1.0 - std::exp(-0.5), 0.0), 1.0);
  EXPECT_NEAR(BoxMuller(1.0 - std::exp(-2.0), 0.5), -2.0, 1e-12);
  EXPECT_NEAR(BoxMuller(0.3, 0.25), 0.0, 1e-12);
}

TEST(BoxMullerTest, StandardNormalMoments) {
  SplitMix64 rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u1 = rng.NextUnit();
    const double z = BoxMuller(u1, rng.NextUnit());
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace crn
