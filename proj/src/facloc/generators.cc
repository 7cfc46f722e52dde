#include "frlp/facloc/generators.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "frlp/error.h"

namespace frlp::facloc {

namespace {

using Points = std::vector<std::vector<double>>;

Points DrawPoints(int count, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Points pts(count, std::vector<double>(dim));
  for (auto& p : pts) {
    for (double& x : p) x = u(rng);
  }
  return pts;
}

double SquaredDistance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

Instance Geometric(int n, int m, int dim, std::uint64_t seed, bool squared) {
  if (n < 1 || m < 1 || dim < 1) throw DomainError("sizes must be >= 1");
  std::mt19937_64 rng(seed);
  const Points facilities = DrawPoints(m, dim, rng);
  const Points cities = DrawPoints(n, dim, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance inst;
  inst.cost_class = squared ? CostClass::kSquaredMetric : CostClass::kMetric;
  inst.facility_costs.resize(m);
  for (double& f : inst.facility_costs) f = u(rng);
  inst.costs.assign(m, std::vector<double>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d2 = SquaredDistance(facilities[i], cities[j]);
      inst.costs[i][j] = squared ? d2 : std::sqrt(d2);
    }
  }
  return inst;
}

}  // namespace

Instance gen_random_sq_euclidean(int n, int m, int dim, std::uint64_t seed) {
  return Geometric(n, m, dim, seed, /*squared=*/true);
}

Instance gen_random_metric(int n, int m, std::uint64_t seed) {
  return Geometric(n, m, 2, seed, /*squared=*/false);
}

Instance gen_setcover_gadget(const std::vector<int>& elements,
                             const std::vector<std::vector<int>>& sets, int k,
                             double gamma) {
  if (elements.empty() || sets.empty() || k < 1) {
    throw DomainError("gadget needs elements, sets and k >= 1");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be finite and positive");
  }
  const int n = static_cast<int>(elements.size());
  Instance inst;
  inst.cost_class = CostClass::kSquaredMetric;
  inst.facility_costs.assign(sets.size(), gamma * n / k);
  inst.costs.assign(sets.size(), std::vector<double>(n, 9.0));
  for (size_t i = 0; i < sets.size(); ++i) {
    const std::set<int> members(sets[i].begin(), sets[i].end());
    for (int j = 0; j < n; ++j) {
      if (members.count(elements[j])) inst.costs[i][j] = 1.0;
    }
  }
  return inst;
}

SetCoverRun setcover_loop(int universe,
                          const std::vector<std::vector<int>>& sets, int k,
                          double gamma, const FacilitySolver& solver,
                          int max_rounds) {
  if (universe < 1) throw DomainError("universe must be nonempty");
  SetCoverRun run;
  std::vector<int> uncovered(universe);
  for (int e = 0; e < universe; ++e) uncovered[e] = e;
  std::set<int> cover;
  for (int round = 0; round < max_rounds && !uncovered.empty(); ++round) {
    const Instance inst = gen_setcover_gadget(uncovered, sets, k, gamma);
    const Solution sol = solver(inst);
    SetCoverRound r;
    r.uncovered_before = static_cast<int>(uncovered.size());
    r.chosen = sol.open;
    std::vector<int> rest;
    for (int j = 0; j < r.uncovered_before; ++j) {
      bool hit = false;
      for (int i : sol.open) hit = hit || inst.c(i, j) == 1.0;
      if (hit) {
        ++r.newly_covered;
      } else {
        rest.push_back(uncovered[j]);
      }
    }
    r.beta = static_cast<double>(r.chosen.size()) / k;
    r.covered_fraction = static_cast<double>(r.newly_covered) / r.uncovered_before;
    cover.insert(r.chosen.begin(), r.chosen.end());
    run.rounds.push_back(std::move(r));
    if (run.rounds.back().newly_covered == 0) break;
    uncovered = std::move(rest);
  }
  run.cover.assign(cover.begin(), cover.end());
  run.complete = uncovered.empty();
  return run;
}

}  // namespace frlp::facloc

namespace frlp::facloc {

std::uint64_t TrialSeed(std::uint64_t base, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(base),
                    static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return static_cast<std::uint64_t>(out[0]) << 32 | out[1];
}

}  // namespace frlp::facloc
