#include "crn/random.h"

#include <limits>
#include <random>
#include <string>

#include "gtest/gtest.h"

namespace crn {
namespace {

TEST(Fnv1a64Test, KnownValues) {
  EXPECT_EQ(Fnv1a64Hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64Hash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a64Hash("foobar"), 0x85944171f73967e8ULL);
}

TEST(Fnv1a64Test, StreamingMatchesOneShot) {
  Fnv1a64 h;
  h.Update("foo");
  h.Update('b');
  h.Update("ar");
  EXPECT_EQ(h.digest(), Fnv1a64Hash("foobar"));
}

TEST(Fnv1a64Test, UpdateDecimalMatchesToString) {
  for (std::int64_t v : {std::int64_t{0}, std::int64_t{7}, std::int64_t{-3},
                         std::int64_t{1234567890123},
                         std::numeric_limits<std::int64_t>::min()}) {
    Fnv1a64 a;
    a.UpdateDecimal(v);
    EXPECT_EQ(a.digest(), Fnv1a64Hash(std::to_string(v))) << v;
  }
  Fnv1a64 b;
  b.UpdateDecimal(std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ(b.digest(),
            Fnv1a64Hash(std::to_string(std::numeric_limits<std::uint64_t>::max())));
}

TEST(SplitMix64Test, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng(), 0x06c45d188009454fULL);
  EXPECT_EQ(FirstDraw(0), 0xe220a8397b1dcdafULL);
}

TEST(SplitMix64Test, FirstDrawMatchesStream) {
  for (std::uint64_t seed : {1ULL, 42ULL, 0xffffffffffffffffULL}) {
    SplitMix64 rng(seed);
    EXPECT_EQ(rng(), FirstDraw(seed));
  }
}

TEST(SplitMix64Test, UnitIntervalBounds) {
  EXPECT_EQ(ToUnit(0), 0.0);
  EXPECT_LT(ToUnit(~0ULL), 1.0);
  EXPECT_EQ(ToUnit(~0ULL), 1.0 - 0x1.0p-53);
}

TEST(SplitMix64Test, WorksWithStdDistributions) {
  SplitMix64 rng(9);
  std::uniform_int_distribution<int> dist(0, 9);
  for (int i = 0; i < 100; ++i) {
    const int v = dist(rng);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, 9);
  }
}

}  // namespace
}  // namespace crn
