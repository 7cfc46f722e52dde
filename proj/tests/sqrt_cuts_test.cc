#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "frlp/cuts/sqrt_cuts.h"
#include "frlp/error.h"

namespace frlp::cuts {
namespace {

TEST(CutTupleTest, DerivedCoefficients) {
  CutTuple t(2.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(t.CoefB(), 4.0);
  EXPECT_DOUBLE_EQ(t.CoefC(), 3.0);
  EXPECT_DOUBLE_EQ(t.CoefD(), 2.5);
  EXPECT_THROW(CutTuple(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(CutTuple(1.0, -1.0, 1.0), DomainError);
}

TEST(SqrtSatisfiedTest, Examples) {
  EXPECT_TRUE(sqrt_satisfied(9, 1, 1, 1));
  EXPECT_FALSE(sqrt_satisfied(10, 1, 1, 1));
  EXPECT_TRUE(sqrt_satisfied(4, 1, 0.25, 0.25));
  EXPECT_THROW(sqrt_satisfied(-1, 1, 1, 1), DomainError);
}

TEST(EvaluateCutTest, Examples) {
  EXPECT_DOUBLE_EQ(evaluate_cut(kUnitTuple, 10, 1, 1, 1), -1.0);
  EXPECT_DOUBLE_EQ(evaluate_cut(kUnitTuple, 9, 1, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(evaluate_cut(CutTuple(2, 1, 1), 0, 1, 1, 1), 9.5);
}

TEST(SeparateTest, Examples) {
  auto t = separate(10, 1, 1, 1);
  ASSERT_TRUE(t.has_value());
  EXPECT_DOUBLE_EQ(t->beta(), 1.0);
  EXPECT_DOUBLE_EQ(t->gamma(), 1.0);
  EXPECT_DOUBLE_EQ(t->delta(), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_cut(*t, 10, 1, 1, 1), -1.0);

  EXPECT_FALSE(separate(9, 1, 1, 1).has_value());

  // Zero in the B slot: d = 1 - (0.2 + 0.2)^2 = 0.84.
  auto z = separate(1, 0, 0.04, 0.04, {0.25, 0.25});
  ASSERT_TRUE(z.has_value());
  EXPECT_NEAR(z->beta(), 0.04 / (0.25 * 0.84), 1e-12);
  EXPECT_NEAR(z->beta(), 0.190476, 1e-6);
  EXPECT_NEAR(z->gamma(), 5.25, 1e-12);
  EXPECT_NEAR(z->delta(), 1.0, 1e-12);
  EXPECT_NEAR(evaluate_cut(*z, 1, 0, 0.04, 0.04), -0.42, 1e-12);
}

TEST(SeparateTest, InvalidXi) {
  EXPECT_THROW(separate(10, 1, 1, 1, {0.5, 0.5}), DomainError);
  EXPECT_THROW(separate(10, 1, 1, 1, {0.0, 0.5}), DomainError);
}

TEST(SeparateTest, BoundaryFamily) {
  for (double b : {0.0, 1e-14, 1e-6, 0.3, 1.0, 7.5, 1e4}) {
    EXPECT_FALSE(separate(9 * b, b, b, b).has_value()) << b;
  }
}

TEST(SeparateTest, EveryZeroPattern) {
  for (int mask = 0; mask < 8; ++mask) {
    const double b = mask & 1 ? 0.0 : 0.5;
    const double c = mask & 2 ? 0.0 : 0.3;
    const double d = mask & 4 ? 0.0 : 0.2;
    const double s = std::sqrt(b) + std::sqrt(c) + std::sqrt(d);
    const double a = s * s + 0.1;
    auto t = separate(a, b, c, d);
    ASSERT_TRUE(t.has_value()) << mask;
    EXPECT_LT(evaluate_cut(*t, a, b, c, d), 0.0) << mask;
  }
}

// Soundness: a satisfied quadruple satisfies every cut.
TEST(SeparatePropertyTest, SatisfiedQuadruplesYieldNoCut) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::lognormal_distribution<double> logn(0.0, 1.5);
  int checked = 0;
  for (int q = 0; q < 1000; ++q) {
    double b = u(rng) < 0.2 ? 0.0 : u(rng) * 4;
    double c = u(rng) < 0.2 ? 0.0 : u(rng) * 4;
    double d = u(rng) < 0.2 ? 0.0 : u(rng) * 4;
    const double s = std::sqrt(b) + std::sqrt(c) + std::sqrt(d);
    const double a = s * s * u(rng);
    ASSERT_TRUE(sqrt_satisfied(a, b, c, d, 0.0));
    EXPECT_FALSE(separate(a, b, c, d).has_value());
    for (int k = 0; k < 100; ++k) {
      CutTuple t(logn(rng), logn(rng), logn(rng));
      EXPECT_GE(evaluate_cut(t, a, b, c, d), -1e-12 * (1 + a));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 100000);
}

// Completeness: each violated quadruple gets a strictly violated cut.
TEST(SeparatePropertyTest, ViolatedQuadruplesYieldViolatedCut) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int per_pattern[8] = {};
  for (int q = 0; q < 1000; ++q) {
    const int mask = q % 8;
    double b = mask & 1 ? 0.0 : u(rng) * 4 + 1e-6;
    double c = mask & 2 ? 0.0 : u(rng) * 4 + 1e-6;
    double d = mask & 4 ? 0.0 : u(rng) * 4 + 1e-6;
    const double s = std::sqrt(b) + std::sqrt(c) + std::sqrt(d);
    const double a = (s + 1e-4 + u(rng)) * (s + 1e-4 + u(rng));
    ASSERT_FALSE(sqrt_satisfied(a, b, c, d));
    auto t = separate(a, b, c, d);
    ASSERT_TRUE(t.has_value());
    EXPECT_LT(evaluate_cut(*t, a, b, c, d), 0.0);
    ++per_pattern[mask];
  }
  for (int count : per_pattern) EXPECT_EQ(count, 125);
}

}  // namespace
}  // namespace frlp::cuts
