#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "frlp/error.h"
#include "frlp/facloc/algorithms.h"
#include "frlp/facloc/checks.h"
#include "frlp/facloc/generators.h"
#include "frlp/facloc/instance.h"
#include "frlp/facloc/lp_rounding.h"
#include "json.hpp"

namespace frlp::facloc {
namespace {

using Kind = Event::Kind;

Instance Make(std::vector<double> f, std::vector<std::vector<double>> c) {
  Instance inst;
  inst.facility_costs = std::move(f);
  inst.costs = std::move(c);
  return inst;
}

double SumAlpha(const Solution& sol) {
  return std::accumulate(sol.alpha.begin(), sol.alpha.end(), 0.0);
}

// Optimum by recursive include/exclude enumeration.
double EnumerateOptimum(const Instance& inst) {
  const int m = inst.num_facilities();
  double best = INFINITY;
  std::vector<bool> open(m, false);
  std::function<void(int)> rec = [&](int i) {
    if (i < 0) {
      double cost = 0.0;
      bool any = false;
      for (int a = 0; a < m; ++a) {
        if (open[a]) {
          any = true;
          cost += inst.facility_costs[a];
        }
      }
      if (!any) return;
      for (int j = 0; j < inst.num_cities(); ++j) {
        double c = INFINITY;
        for (int a = 0; a < m; ++a) {
          if (open[a]) c = std::min(c, inst.c(a, j));
        }
        cost += c;
      }
      best = std::min(best, cost);
      return;
    }
    open[i] = true;
    rec(i - 1);
    open[i] = false;
    rec(i - 1);
  };
  rec(m - 1);
  return best;
}

// Facility 0 (f=1) is at distance 2 from city 0; facility 1 (f=4) is at
// distance 0 from city 0 and 4 from cities 1, 2.
Instance SwitchInstance() {
  return Make({1.0, 4.0}, {{2.0, 10.0, 10.0}, {0.0, 4.0, 4.0}});
}

TEST(InstanceTest, ValidationAndJson) {
  EXPECT_THROW(Make({}, {}).Validate(), DimensionError);
  EXPECT_THROW(Make({1.0}, {{1.0}, {2.0}}).Validate(), DimensionError);
  EXPECT_THROW(Make({1.0, 1.0}, {{1.0, 2.0}, {1.0}}).Validate(), DimensionError);
  EXPECT_THROW(Make({-1.0}, {{1.0}}).Validate(), DomainError);
  EXPECT_THROW(Make({1.0}, {{NAN}}).Validate(), DomainError);

  Instance inst = gen_random_sq_euclidean(4, 3, 2, 11);
  const Instance back = InstanceFromJson(nlohmann::json::parse(ToJson(inst).dump()));
  EXPECT_EQ(back.facility_costs, inst.facility_costs);
  EXPECT_EQ(back.costs, inst.costs);
  EXPECT_EQ(back.cost_class, CostClass::kSquaredMetric);
  EXPECT_THROW(InstanceFromJson(nlohmann::json::parse(R"({"costs":[[1]]})")),
               DimensionError);
  EXPECT_THROW(ParseCostClass("euclid"), DomainError);

  const nlohmann::json sol = ToJson(run_a1(inst));
  EXPECT_TRUE(sol.contains("alpha"));
  EXPECT_DOUBLE_EQ(sol["total"].get<double>(),
                   sol["facility_cost"].get<double>() +
                       sol["connection_cost"].get<double>());
}

TEST(EvaluateTest, CheapestOpenFacilityWithIndexTies) {
  const Instance inst = Make({1.0, 2.0, 3.0}, {{3.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}});
  const Solution sol = Evaluate(inst, {2, 1, 1});
  EXPECT_EQ(sol.open, (std::vector<int>{1, 2}));
  EXPECT_EQ(sol.assignment, (std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(sol.total, 6.0);
  EXPECT_THROW(Evaluate(inst, {}), DomainError);
}

TEST(A1Test, SingleCity) {
  std::vector<Event> trace;
  const Solution sol = run_a1(Make({1.0}, {{0.0}}), &trace);
  EXPECT_EQ(sol.open, (std::vector<int>{0}));
  EXPECT_DOUBLE_EQ(sol.alpha[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.total, 1.0);
  EXPECT_EQ(trace, (std::vector<Event>{{Kind::kOpen, 1.0, 0, -1},
                                       {Kind::kConnect, 1.0, 0, 0}}));
}

TEST(A1Test, SymmetricSplit) {
  const Solution sol = run_a1(Make({2.0}, {{0.0, 0.0}}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{1.0, 1.0}));
  EXPECT_DOUBLE_EQ(sol.total, 2.0);
}

TEST(A1Test, CheapFacilityPaidByBothCities) {
  // Both cities are at distance 0 from facility 0 (f=1) and 3 from
  // facility 1 (f=10). Facility 0 collects 2t and opens at t = 1/2.
  std::vector<Event> trace;
  const Solution sol =
      run_a1(Make({1.0, 10.0}, {{0.0, 0.0}, {3.0, 3.0}}), &trace);
  EXPECT_EQ(trace, (std::vector<Event>{{Kind::kOpen, 0.5, 0, -1},
                                       {Kind::kConnect, 0.5, 0, 0},
                                       {Kind::kConnect, 0.5, 0, 1}}));
  EXPECT_EQ(sol.open, (std::vector<int>{0}));
  EXPECT_EQ(sol.assignment, (std::vector<int>{0, 0}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(sol.total, 1.0);
}

TEST(A1Test, ConnectionEventToOpenFacility) {
  // Facility 0 opens at t=1 paid by city 0; city 1 reaches it at t=5,
  // before facility 1 (f=20) is paid.
  std::vector<Event> trace;
  const Solution sol =
      run_a1(Make({1.0, 20.0}, {{0.0, 5.0}, {9.0, 9.0}}), &trace);
  EXPECT_EQ(trace, (std::vector<Event>{{Kind::kOpen, 1.0, 0, -1},
                                       {Kind::kConnect, 1.0, 0, 0},
                                       {Kind::kConnect, 5.0, 0, 1}}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{1.0, 5.0}));
  EXPECT_DOUBLE_EQ(SumAlpha(sol), sol.total);
}

TEST(A1Test, KeepsOwnAssignmentAfterLaterOpening) {
  // Facility 0 opens at t=3 (city 0 pays 3-2); facility 1 is paid only by
  // cities 1 and 2 after that: 2(t-4) = 4 at t=6. City 0 stays on facility 0.
  std::vector<Event> trace;
  const Solution sol = run_a1(SwitchInstance(), &trace);
  EXPECT_EQ(trace, (std::vector<Event>{{Kind::kOpen, 3.0, 0, -1},
                                       {Kind::kConnect, 3.0, 0, 0},
                                       {Kind::kOpen, 6.0, 1, -1},
                                       {Kind::kConnect, 6.0, 1, 1},
                                       {Kind::kConnect, 6.0, 1, 2}}));
  EXPECT_EQ(sol.assignment, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{3.0, 6.0, 6.0}));
  EXPECT_DOUBLE_EQ(sol.total, 15.0);
  EXPECT_DOUBLE_EQ(SumAlpha(sol), 15.0);
}

TEST(A1Test, TiesOpenSmallestFacilityFirst) {
  std::vector<Event> trace;
  const Solution sol = run_a1(Make({1.0, 1.0}, {{0.0}, {0.0}}), &trace);
  EXPECT_EQ(sol.open, (std::vector<int>{0}));
  EXPECT_EQ(trace.front(), (Event{Kind::kOpen, 1.0, 0, -1}));
}

TEST(A1Test, FreeFacilityOpensAtZero) {
  std::vector<Event> trace;
  const Solution sol = run_a1(Make({5.0, 0.0}, {{0.0, 1.0}, {2.0, 2.0}}), &trace);
  EXPECT_EQ(trace.front(), (Event{Kind::kOpen, 0.0, 1, -1}));
  EXPECT_EQ(sol.assignment, (std::vector<int>{1, 1}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{2.0, 2.0}));
}

TEST(A1Test, DualFittingIdentityOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const Instance& inst : {gen_random_sq_euclidean(9, 5, 2, seed),
                                 gen_random_metric(7, 6, seed)}) {
      const Solution sol = run_a1(inst);
      CheckFeasible(inst, sol);
      EXPECT_NEAR(SumAlpha(sol), sol.total, 1e-9 * sol.total) << seed;
    }
  }
}

TEST(A2Test, FirstRootWins) {
  std::vector<Event> trace;
  const Solution sol = run_a2(Make({1.0, 0.5}, {{0.0}, {0.0}}), &trace);
  EXPECT_EQ(sol.open, (std::vector<int>{1}));
  EXPECT_EQ(sol.assignment, (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(sol.alpha[0], 0.5);
  EXPECT_EQ(trace.front(), (Event{Kind::kOpen, 0.5, 1, -1}));
}

TEST(A2Test, ConnectedOfferOpensFacilityAndSwitches) {
  // After t=3 city 0 offers c_00 - c_10 = 2 to facility 1, which then opens
  // when 2 + 2(t-4) = 4, at t=5. City 0 switches.
  std::vector<Event> trace;
  const Solution sol = run_a2(SwitchInstance(), &trace);
  EXPECT_EQ(trace, (std::vector<Event>{{Kind::kOpen, 3.0, 0, -1},
                                       {Kind::kConnect, 3.0, 0, 0},
                                       {Kind::kOpen, 5.0, 1, -1},
                                       {Kind::kSwitch, 5.0, 1, 0},
                                       {Kind::kConnect, 5.0, 1, 1},
                                       {Kind::kConnect, 5.0, 1, 2}}));
  EXPECT_EQ(sol.switches, 1);
  EXPECT_EQ(sol.assignment, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(sol.alpha, (std::vector<double>{3.0, 5.0, 5.0}));
  EXPECT_DOUBLE_EQ(sol.total, 13.0);
  EXPECT_DOUBLE_EQ(SumAlpha(sol), 13.0);
}

TEST(A2Test, NoSwitchMeansSameAsA1) {
  int without = 0, with = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = gen_random_sq_euclidean(8, 5, 2, seed);
    const Solution a2 = run_a2(inst);
    CheckFeasible(inst, a2);
    EXPECT_NEAR(SumAlpha(a2), a2.total, 1e-9 * a2.total);
    // Every city ends at a cheapest open facility.
    EXPECT_DOUBLE_EQ(a2.connection_cost,
                     Evaluate(inst, a2.open).connection_cost);
    if (a2.switches == 0) {
      ++without;
      EXPECT_EQ(a2, run_a1(inst)) << seed;
    } else {
      ++with;
    }
  }
  EXPECT_GT(without, 0);
  EXPECT_GT(with, 0);
}

TEST(GreedyAugmentTest, NoGainLeavesSolutionUnchanged) {
  const Instance inst = Make({5.0, 5.0}, {{0.0, 1.0}, {1.0, 0.0}});
  const Solution start = Evaluate(inst, {0});
  EXPECT_EQ(greedy_augment(inst, start), start);
}

TEST(GreedyAugmentTest, FreeFacilityIsOpened) {
  const Instance inst = Make({1.0, 0.0}, {{2.0, 2.0}, {2.0, 1.0}});
  const Solution out = greedy_augment(inst, Evaluate(inst, {0}));
  EXPECT_EQ(out.open, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(out.total, 4.0);
}

TEST(GreedyAugmentTest, ReachesOptimumOnCraftedInstance) {
  const Instance inst =
      Make({1.0, 1.0, 10.0}, {{0.0, 6.0}, {6.0, 0.0}, {3.0, 3.0}});
  const Solution out = greedy_augment(inst, Evaluate(inst, {0}));
  EXPECT_EQ(out.open, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(out.total, EnumerateOptimum(inst));
}

TEST(GreedyAugmentTest, BestRatioFirstWithIndexTies) {
  // Gains 4 and 4 at equal cost: facility 1 first, then facility 2.
  const Instance inst =
      Make({1.0, 1.0, 1.0}, {{5.0, 5.0}, {0.0, 5.0}, {5.0, 0.0}});
  const Solution out = greedy_augment(inst, Evaluate(inst, {0}));
  EXPECT_EQ(out.open, (std::vector<int>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(out.total, 3.0);
}

TEST(A3Test, UnitDeltaWithoutGainEqualsA2) {
  const Instance inst = Make({1.0}, {{0.0, 1.0, 2.0}});
  const Solution a2 = run_a2(inst);
  const Solution a3 = run_a3(inst, 1.0);
  EXPECT_EQ(a3.open, a2.open);
  EXPECT_EQ(a3.assignment, a2.assignment);
  EXPECT_DOUBLE_EQ(a3.total, a2.total);
  EXPECT_TRUE(a3.alpha.empty());
  EXPECT_THROW(run_a3(inst, 0.5), DomainError);
}

TEST(A3Test, CostsMeasuredOnOriginalInstance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = gen_random_sq_euclidean(8, 5, 2, seed);
    const Solution sol = run_a3(inst, 2.0543);
    CheckFeasible(inst, sol);
    EXPECT_GE(sol.total, brute_force_opt(inst).total - 1e-12);
  }
}

TEST(A3Test, GadgetInstancesAreFeasible) {
  const std::vector<std::vector<int>> sets = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  for (int k = 1; k <= 3; ++k) {
    const Instance inst = gen_setcover_gadget({0, 1, 2, 3}, sets, k, 1.2);
    const Solution sol = run_a3(inst, 2.0543);
    CheckFeasible(inst, sol);
    EXPECT_GE(sol.total, brute_force_opt(inst).total - 1e-12);
  }
}

TEST(BruteForceTest, SmallCases) {
  EXPECT_EQ(brute_force_opt(Make({7.0}, {{1.0, 2.0}})).open, (std::vector<int>{0}));
  const Instance free = Make({0.0, 0.0, 0.0}, {{3.0, 1.0}, {1.0, 3.0}, {2.0, 2.0}});
  const Solution all = brute_force_opt(free);
  EXPECT_DOUBLE_EQ(all.connection_cost, 2.0);
  EXPECT_EQ(all.assignment, (std::vector<int>{1, 0}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_random_metric(4, 3, seed);
    EXPECT_NEAR(brute_force_opt(inst).total, EnumerateOptimum(inst), 1e-12);
  }
  Instance big = Make(std::vector<double>(21, 1.0),
                      std::vector<std::vector<double>>(21, {1.0}));
  EXPECT_THROW(brute_force_opt(big), SizeError);
}

TEST(ScaleInvarianceTest, AlgorithmsCommuteWithScaling) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = gen_random_sq_euclidean(8, 5, 2, seed);
    for (double lambda : {0.5, 4.0, 3.0}) {
      Instance scaled = inst;
      for (double& f : scaled.facility_costs) f *= lambda;
      for (auto& row : scaled.costs) {
        for (double& c : row) c *= lambda;
      }
      const std::vector<std::function<Solution(const Instance&)>> algs = {
          [](const Instance& x) { return run_a1(x); },
          [](const Instance& x) { return run_a2(x); },
          [](const Instance& x) { return run_a3(x, 2.0543); },
          [](const Instance& x) { return brute_force_opt(x); }};
      for (const auto& alg : algs) {
        const Solution a = alg(inst);
        const Solution b = alg(scaled);
        EXPECT_EQ(a.open, b.open) << seed << " " << lambda;
        EXPECT_EQ(a.assignment, b.assignment);
        EXPECT_NEAR(b.total, lambda * a.total, 1e-9 * b.total);
      }
    }
  }
}

TEST(ValidateClassTest, Gadget) {
  const Instance inst = gen_setcover_gadget({1, 2}, {{1}, {2}}, 2, 1.0);
  EXPECT_EQ(inst.facility_costs, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(inst.costs, (std::vector<std::vector<double>>{{1.0, 9.0}, {9.0, 1.0}}));
  EXPECT_TRUE(validate_class(inst, CostClass::kSquaredMetric).empty());
  EXPECT_TRUE(validate_class(inst, CostClass::kRelaxed, 3.0).empty());
  // c = 9 against the path 1 + 1 + 1 through the second set.
  const Instance nested = gen_setcover_gadget({0, 1}, {{0}, {0, 1}}, 1, 1.0);
  EXPECT_TRUE(validate_class(nested, CostClass::kSquaredMetric).empty());
  EXPECT_FALSE(validate_class(nested, CostClass::kMetric).empty());
}

TEST(ValidateClassTest, GeneratorsProduceTheirClass) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance sq = gen_random_sq_euclidean(6, 4, 3, seed);
    EXPECT_TRUE(validate_class(sq).empty());
    Instance metric = gen_random_metric(6, 4, seed);
    EXPECT_TRUE(validate_class(metric).empty());
    for (auto& row : metric.costs) {
      for (double& c : row) c *= c;
    }
    EXPECT_TRUE(validate_class(metric, CostClass::kRelaxed, 3.0).empty());
    EXPECT_TRUE(validate_class(metric, CostClass::kSquaredMetric).empty());
  }
  const Instance one = gen_random_sq_euclidean(1, 1, 2, 5);
  EXPECT_GE(one.c(0, 0), 0.0);
  EXPECT_EQ(gen_random_sq_euclidean(5, 3, 2, 9).costs,
            gen_random_sq_euclidean(5, 3, 2, 9).costs);
  EXPECT_NE(gen_random_sq_euclidean(5, 3, 2, 9).costs,
            gen_random_sq_euclidean(5, 3, 2, 10).costs);
  EXPECT_THROW(gen_random_metric(0, 3, 1), DomainError);
}

TEST(ValidateClassTest, ReportsViolatingQuadruple) {
  const Instance inst = Make({1.0, 1.0}, {{10.0, 1.0}, {1.0, 1.0}});
  const auto bad = validate_class(inst, CostClass::kMetric);
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad.front().i, 0);
  EXPECT_EQ(bad.front().j, 0);
  EXPECT_DOUBLE_EQ(bad.front().slack, -7.0);
  EXPECT_TRUE(validate_class(inst, CostClass::kGeneral).empty());
}

TEST(OvertightTest, InfiniteGammaAlwaysHolds) {
  const Instance inst = SwitchInstance();
  EXPECT_TRUE(AllOvertight(check_overtight(inst, run_a1(inst).alpha, INFINITY)));
}

TEST(OvertightTest, FailsAtGammaOne) {
  // Facility 1 sees 3 + 2 + 2 = 7 > 4 from the A1 budgets (3, 6, 6).
  const Instance inst = SwitchInstance();
  const auto rows = check_overtight(inst, run_a1(inst).alpha, 1.0);
  EXPECT_TRUE(rows[0].ok);
  EXPECT_FALSE(rows[1].ok);
  EXPECT_DOUBLE_EQ(rows[1].lhs, 7.0);
  EXPECT_DOUBLE_EQ(rows[1].slack, -3.0);
}

TEST(OvertightTest, HoldsAtCertifiedFactorOnSquaredMetrics) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_sq_euclidean(10, 6, 2, seed);
    EXPECT_TRUE(AllOvertight(check_overtight(inst, run_a1(inst).alpha, 2.87)))
        << seed;
  }
}

TEST(BudgetLemmaTest, HoldsAndDetectsInflation) {
  EXPECT_TRUE(check_budget_lemma(Make({1.0}, {{0.5}}), {1.5}).empty());
  int detected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_sq_euclidean(10, 6, 2, seed);
    std::vector<double> alpha = run_a1(inst).alpha;
    EXPECT_TRUE(check_budget_lemma(inst, alpha).empty()) << seed;
    alpha[0] *= 10.0;
    if (!check_budget_lemma(inst, alpha).empty()) ++detected;
  }
  EXPECT_GT(detected, 90);
}

TEST(LpRelaxationTest, SmallCases) {
  const FractionalSolution one = solve_lp_relaxation(Make({2.0}, {{3.0}}));
  EXPECT_NEAR(one.y[0], 1.0, 1e-9);
  EXPECT_NEAR(one.x[0][0], 1.0, 1e-9);
  EXPECT_NEAR(one.objective, 5.0, 1e-9);

  const Instance free = Make({0.0, 4.0, 4.0}, {{1.0, 2.0, 1.0}, {3.0, 3.0, 3.0}, {5.0, 2.5, 4.0}});
  EXPECT_NEAR(solve_lp_relaxation(free).objective, 4.0, 1e-9);

  EXPECT_THROW(solve_lp_relaxation(gen_random_metric(40, 40, 1)), SizeError);
}

TEST(LpRelaxationTest, LowerBoundsIntegralOptimum) {
  int integral = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = gen_random_sq_euclidean(6, 4, 2, seed);
    const FractionalSolution frac = solve_lp_relaxation(inst);
    const double opt = brute_force_opt(inst).total;
    EXPECT_LE(frac.objective, opt + 1e-7);
    bool is_integral = true;
    for (double y : frac.y) is_integral &= y < 1e-7 || y > 1.0 - 1e-7;
    if (is_integral) {
      ++integral;
      EXPECT_NEAR(frac.objective, opt, 1e-7) << seed;
    }
    for (int j = 0; j < inst.num_cities(); ++j) {
      double s = 0.0;
      for (int i = 0; i < inst.num_facilities(); ++i) {
        s += frac.x[i][j];
        EXPECT_LE(frac.x[i][j], frac.y[i] + 1e-12);
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
  EXPECT_GT(integral, 0);
}

// Squared-Euclidean instance with cities near midpoints of facility pairs;
// its LP optimum is fractional and some cities have close facilities of their
// cluster center outside their own support.
Instance FractionalInstance() {
  std::ifstream in(FRLP_TEST_DATA_DIR "/cs_5x15.json");
  return InstanceFromJson(nlohmann::json::parse(in));
}

TEST(CsPlanTest, StructuralInvariants) {
  const Instance inst = FractionalInstance();
  EXPECT_TRUE(validate_class(inst).empty());
  const double gamma = 2.04011;
  const CsPlan plan = PrepareCs(inst, gamma);
  double expected = 0.0;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    expected += gamma * plan.lp.y[i] * inst.facility_costs[i];
    double length = 0.0;
    for (const FacilityCopy& copy : plan.copies) {
      if (copy.facility == i) length += copy.ybar();
    }
    EXPECT_NEAR(length, plan.ybar[i], 1e-12);
  }
  EXPECT_NEAR(plan.expected_facility_cost, expected, 1e-12);
  for (const FacilityCopy& copy : plan.copies) {
    EXPECT_GT(copy.ybar(), 0.0);
    EXPECT_LE(copy.ybar(), 1.0 + 1e-12);
  }
  for (int j = 0; j < inst.num_cities(); ++j) {
    const CityProfile& p = plan.cities[j];
    double mass = 0.0;
    for (int k : p.close) mass += plan.copies[k].ybar();
    EXPECT_NEAR(mass, 1.0, 1e-7);
    // djf is the LP connection cost of j.
    double cost = 0.0;
    for (int i = 0; i < inst.num_facilities(); ++i) cost += plan.lp.x[i][j] * inst.c(i, j);
    EXPECT_NEAR(p.djf, cost, 1e-7);
    EXPECT_GE(p.rho, -1e-12);
    EXPECT_LE(p.rho, 1.0);
    EXPECT_LE(p.d_close, p.djf + 1e-9);
    if (!p.distant.empty()) {
      EXPECT_LE(p.djf, p.d_distant + 1e-9);
    }
    for (int k : p.close) EXPECT_LE(inst.c(plan.copies[k].facility, j), p.d_max);
  }
  // Centers own disjoint close sets, and every city shares a copy with its
  // center.
  for (size_t a = 0; a < plan.centers.size(); ++a) {
    for (size_t b = a + 1; b < plan.centers.size(); ++b) {
      for (int k : plan.cities[plan.centers[a]].close) {
        const auto& other = plan.cities[plan.centers[b]].close;
        EXPECT_EQ(std::count(other.begin(), other.end(), k), 0);
      }
    }
  }
  for (int j = 0; j < inst.num_cities(); ++j) {
    const auto& mine = plan.cities[j].close;
    const auto& theirs = plan.cities[plan.center_of[j]].close;
    bool shared = false;
    for (int k : mine) shared |= std::count(theirs.begin(), theirs.end(), k) > 0;
    EXPECT_TRUE(shared);
  }
  EXPECT_THROW(PrepareCs(inst, 0.9), DomainError);
}

TEST(CsTest, SingleFacility) {
  const Instance inst = Make({2.0}, {{3.0}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Solution sol = run_cs(inst, 2.04011, seed);
    EXPECT_EQ(sol.open, (std::vector<int>{0}));
    EXPECT_DOUBLE_EQ(sol.connection_cost, 3.0);
  }
}

TEST(CsTest, IntegralLpGivesOptimum) {
  const Instance inst = Make({1.0, 1.0, 5.0},
                             {{0.0, 0.0, 10.0, 10.0},
                              {10.0, 10.0, 0.0, 0.0},
                              {5.0, 5.0, 5.0, 5.0}});
  const CsPlan plan = PrepareCs(inst, 2.04011);
  const double opt = brute_force_opt(inst).total;
  EXPECT_NEAR(plan.lp.objective, opt, 1e-9);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Solution sol = RoundCs(plan, seed).solution;
    EXPECT_EQ(sol.open, (std::vector<int>{0, 1}));
    EXPECT_DOUBLE_EQ(sol.total, opt);
  }
}

TEST(CsTest, DeterministicForFixedSeed) {
  const Instance inst = FractionalInstance();
  EXPECT_EQ(run_cs(inst, 2.04011, 3), run_cs(inst, 2.04011, 3));
  EXPECT_EQ(TrialSeed(5, 7), TrialSeed(5, 7));
  EXPECT_NE(TrialSeed(5, 7), TrialSeed(5, 8));
}

struct Mean {
  double sum = 0.0, sq = 0.0;
  int count = 0;
  void Add(double v) {
    sum += v;
    sq += v * v;
    ++count;
  }
  double mean() const { return sum / count; }
  double stderr_() const {
    const double var = (sq - sum * sum / count) / (count - 1);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

class CsMonteCarloTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    inst_ = new Instance(FractionalInstance());
    plan_ = new CsPlan(PrepareCs(*inst_, 2.04011));
    draws_ = new std::vector<CsDraw>();
    for (int t = 0; t < 20000; ++t) draws_->push_back(RoundCs(*plan_, TrialSeed(2024, t)));
  }
  static void TearDownTestSuite() {
    delete draws_;
    delete plan_;
    delete inst_;
  }
  static Instance* inst_;
  static CsPlan* plan_;
  static std::vector<CsDraw>* draws_;
};

Instance* CsMonteCarloTest::inst_ = nullptr;
CsPlan* CsMonteCarloTest::plan_ = nullptr;
std::vector<CsDraw>* CsMonteCarloTest::draws_ = nullptr;

TEST_F(CsMonteCarloTest, ExpectedFacilityCost) {
  Mean m;
  for (const CsDraw& d : *draws_) {
    m.Add(d.split_facility_cost);
    EXPECT_LE(d.solution.facility_cost, d.split_facility_cost + 1e-12);
  }
  EXPECT_LE(std::abs(m.mean() - plan_->expected_facility_cost), 3.0 * m.stderr_())
      << m.mean() << " vs " << plan_->expected_facility_cost;
}

TEST_F(CsMonteCarloTest, ConditionalMinimumBelowAverageDistance) {
  int checked = 0;
  for (int j = 0; j < inst_->num_cities(); ++j) {
    for (const auto* set : {&plan_->cities[j].close, &plan_->cities[j].distant}) {
      if (set->empty()) continue;
      Mean m;
      for (const CsDraw& d : *draws_) {
        double best = INFINITY;
        for (int k : *set) {
          if (d.copy_open[k]) best = std::min(best, inst_->c(plan_->copies[k].facility, j));
        }
        if (std::isfinite(best)) m.Add(best);
      }
      if (m.count < 2) continue;
      ++checked;
      EXPECT_LE(m.mean(), AverageDistance(*plan_, j, *set) + 3.0 * m.stderr_() + 1e-12);
    }
  }
  EXPECT_GT(checked, inst_->num_cities());
}

TEST_F(CsMonteCarloTest, CenterFallbackCost) {
  const double gamma = plan_->gamma;
  int checked = 0;
  for (int j = 0; j < inst_->num_cities(); ++j) {
    const int center = plan_->center_of[j];
    const CityProfile& p = plan_->cities[j];
    if (center == j || p.distant.empty()) continue;
    std::vector<int> own = p.close;
    own.insert(own.end(), p.distant.begin(), p.distant.end());
    std::vector<int> rest;
    for (int k : plan_->cities[center].close) {
      if (std::find(own.begin(), own.end(), k) == own.end()) rest.push_back(k);
    }
    if (rest.empty()) continue;
    const double bound = 3.0 * (gamma * p.djf + (3.0 - gamma) * p.d_distant);
    EXPECT_LE(AverageDistance(*plan_, j, rest), bound + 1e-12);
    Mean m;
    for (const CsDraw& d : *draws_) {
      for (int k : rest) {
        if (d.copy_open[k]) m.Add(inst_->c(plan_->copies[k].facility, j));
      }
    }
    if (m.count < 2) continue;
    ++checked;
    EXPECT_LE(m.mean(), bound + 3.0 * m.stderr_());
  }
  EXPECT_GT(checked, 0);
}

TEST(CsMonteCarloSummaryTest, AgreesWithDirectChecks) {
  const CsPlan plan = PrepareCs(FractionalInstance(), 2.04011);
  const CsMonteCarlo mc = monte_carlo_cs(plan, 20000, 2024);
  EXPECT_TRUE(mc.ok());
  EXPECT_EQ(mc.trials, 20000);
  EXPECT_GT(mc.nearest_checked, plan.inst.num_cities());
  EXPECT_GT(mc.center_checked, 0);
  EXPECT_EQ(monte_carlo_cs(plan, 200, 9).facility.mean,
            monte_carlo_cs(plan, 200, 9).facility.mean);
  EXPECT_THROW(monte_carlo_cs(plan, 1, 0), DomainError);
}

TEST(SetCoverTest, LoopCoversUniverse) {
  const std::vector<std::vector<int>> sets = {{0, 1, 2}, {2, 3}, {3, 4, 5}, {5, 0}, {1, 4}};
  const SetCoverRun run = setcover_loop(
      6, sets, 2, 1.0, [](const Instance& inst) { return brute_force_opt(inst); });
  EXPECT_TRUE(run.complete);
  std::vector<bool> covered(6, false);
  for (int s : run.cover) {
    for (int e : sets[s]) covered[e] = true;
  }
  EXPECT_EQ(std::count(covered.begin(), covered.end(), true), 6);
  EXPECT_EQ(run.rounds.front().uncovered_before, 6);
  for (const SetCoverRound& r : run.rounds) {
    EXPECT_GT(r.newly_covered, 0);
    EXPECT_NEAR(r.beta, r.chosen.size() / 2.0, 1e-15);
  }
}

TEST(SetCoverTest, StallsWhenNothingIsCovered) {
  const SetCoverRun run = setcover_loop(
      2, {{0}, {1}}, 1, 1.0, [](const Instance& inst) {
        Solution s = Evaluate(inst, {0});
        s.open = {};  // a solver that opens nothing useful
        return s;
      });
  EXPECT_FALSE(run.complete);
  EXPECT_EQ(run.rounds.size(), 1u);
}

}  // namespace
}  // namespace frlp::facloc
