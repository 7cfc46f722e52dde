#include "frlp/facloc/lp_rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "frlp/error.h"
#include "frlp/facloc/generators.h"
#include "frlp/lp/linear_program.h"
#include "frlp/lp/simplex.h"

namespace frlp::facloc {

namespace {

constexpr double kCutTol = 1e-9;
constexpr double kClassifyTol = 1e-8;
constexpr double kRenormalizeTol = 1e-7;

std::vector<double> CutPoints(const CsPlan& plan, int i) {
  const double top = plan.ybar[i];
  std::vector<double> cuts = {0.0, top};
  for (double k = 1.0; k < top; k += 1.0) cuts.push_back(k);
  for (int j = 0; j < plan.inst.num_cities(); ++j) {
    cuts.push_back(std::min(plan.xbar[i][j], top));
    cuts.push_back(std::min(plan.gamma * plan.lp.x[i][j], top));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> out;
  for (double c : cuts) {
    if (out.empty() || c - out.back() > kCutTol) out.push_back(c);
  }
  if (top - out.back() > 0.0) out.back() = top;
  return out;
}

std::string Name(const char* base, int i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string Name(const char* base, int i, int j) {
  return std::string(base) + "[" + std::to_string(i) + "," + std::to_string(j) +
         "]";
}

bool Intersects(const std::vector<int>& a, const std::vector<int>& b) {
  size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p] == b[q]) return true;
    if (a[p] < b[q]) {
      ++p;
    } else {
      ++q;
    }
  }
  return false;
}

}  // namespace

FractionalSolution solve_lp_relaxation(const Instance& inst, int max_cells) {
  inst.Validate();
  const int m = inst.num_facilities();
  const int n = inst.num_cities();
  if (static_cast<long long>(m) * n > max_cells) {
    throw SizeError("LP relaxation exceeds the size budget of " +
                    std::to_string(max_cells) + " cells");
  }
  lp::LinearProgram model(lp::Sense::kMinimize);
  std::vector<int> y(m);
  std::vector<std::vector<int>> x(m, std::vector<int>(n));
  for (int i = 0; i < m; ++i) {
    y[i] = model.AddVariable(Name("y", i + 1), "y");
    model.SetObjective(y[i], inst.facility_costs[i]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      x[i][j] = model.AddVariable(Name("x", i + 1, j + 1), "x");
      model.SetObjective(x[i][j], inst.c(i, j));
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<lp::Term> terms;
    for (int i = 0; i < m; ++i) terms.push_back({x[i][j], 1.0});
    model.AddConstraint(Name("assign", j + 1), std::move(terms),
                        lp::Relation::kEqual, 1.0);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      model.AddConstraint(Name("link", i + 1, j + 1),
                          {{x[i][j], 1.0}, {y[i], -1.0}},
                          lp::Relation::kLessEqual, 0.0);
    }
  }
  const lp::LpSolution sol = lp::solve(model);
  if (!sol.optimal()) {
    throw NumericalError(std::string("LP relaxation not solved: ") +
                         lp::ToString(sol.status));
  }
  FractionalSolution out;
  out.y.assign(m, 0.0);
  out.x.assign(m, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      out.x[i][j] = std::max(sol.primal[x[i][j]], 0.0);
      total += out.x[i][j];
    }
    for (int i = 0; i < m; ++i) out.x[i][j] /= total;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) out.y[i] = std::max(out.y[i], out.x[i][j]);
    out.facility_cost += inst.facility_costs[i] * out.y[i];
    for (int j = 0; j < n; ++j) out.connection_cost += inst.c(i, j) * out.x[i][j];
  }
  out.objective = out.facility_cost + out.connection_cost;
  return out;
}

double AverageDistance(const CsPlan& plan, int j,
                       const std::vector<int>& copies) {
  double weight = 0.0, sum = 0.0;
  for (int k : copies) {
    const FacilityCopy& copy = plan.copies[k];
    weight += copy.ybar();
    sum += copy.ybar() * plan.inst.c(copy.facility, j);
  }
  if (!(weight > 0.0)) throw DomainError("average over an empty facility set");
  return sum / weight;
}

CsPlan PrepareCs(const Instance& inst, double gamma, int max_cells) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be finite and >= 1");
  }
  CsPlan plan;
  plan.inst = inst;
  plan.gamma = gamma;
  plan.lp = solve_lp_relaxation(inst, max_cells);
  const int m = inst.num_facilities();
  const int n = inst.num_cities();

  plan.ybar.resize(m);
  for (int i = 0; i < m; ++i) {
    plan.ybar[i] = gamma * plan.lp.y[i];
    plan.expected_facility_cost += plan.ybar[i] * inst.facility_costs[i];
  }

  // Each city takes one unit from its cheapest facilities, using at most
  // gamma x*_ij of facility i.
  plan.xbar.assign(m, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return inst.c(a, j) < inst.c(b, j);
    });
    double remaining = 1.0;
    for (int i : order) {
      if (remaining <= 0.0) break;
      const double take = std::min(gamma * plan.lp.x[i][j], remaining);
      if (take <= kCutTol) continue;
      plan.xbar[i][j] = take;
      remaining -= take;
    }
  }

  for (int i = 0; i < m; ++i) {
    const std::vector<double> cuts = CutPoints(plan, i);
    for (size_t k = 1; k < cuts.size(); ++k) {
      plan.copies.push_back({i, cuts[k - 1], cuts[k]});
    }
  }

  plan.cities.resize(n);
  for (int j = 0; j < n; ++j) {
    CityProfile& prof = plan.cities[j];
    for (int k = 0; k < static_cast<int>(plan.copies.size()); ++k) {
      const FacilityCopy& copy = plan.copies[k];
      const double share = plan.xbar[copy.facility][j];
      const double served = plan.gamma * plan.lp.x[copy.facility][j];
      if (copy.hi <= share + kClassifyTol) {
        prof.close.push_back(k);
      } else if (copy.lo >= share - kClassifyTol &&
                 copy.hi <= served + kClassifyTol) {
        prof.distant.push_back(k);
      }
    }
    std::vector<int> all = prof.close;
    all.insert(all.end(), prof.distant.begin(), prof.distant.end());
    prof.djf = AverageDistance(plan, j, all);
    prof.d_close = AverageDistance(plan, j, prof.close);
    prof.d_distant =
        prof.distant.empty() ? prof.djf : AverageDistance(plan, j, prof.distant);
    for (int k : prof.close) {
      prof.d_max = std::max(prof.d_max, inst.c(plan.copies[k].facility, j));
    }
    prof.rho = prof.djf > 0.0 ? (prof.djf - prof.d_close) / prof.djf : 0.0;
  }

  plan.center_of.assign(n, -1);
  std::vector<bool> clustered(plan.copies.size(), false);
  for (int left = n; left > 0;) {
    int center = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (plan.center_of[j] >= 0) continue;
      const double key = plan.cities[j].d_close + plan.cities[j].d_max;
      if (key < best) {
        best = key;
        center = j;
      }
    }
    plan.centers.push_back(center);
    for (int k : plan.cities[center].close) clustered[k] = true;
    for (int j = 0; j < n; ++j) {
      if (plan.center_of[j] < 0 &&
          Intersects(plan.cities[j].close, plan.cities[center].close)) {
        plan.center_of[j] = center;
        --left;
      }
    }
  }
  for (int k = 0; k < static_cast<int>(plan.copies.size()); ++k) {
    if (!clustered[k]) plan.unclustered.push_back(k);
  }
  return plan;
}

CsDraw RoundCs(const CsPlan& plan, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CsDraw draw;
  draw.copy_open.assign(plan.copies.size(), false);
  for (int center : plan.centers) {
    const std::vector<int>& close = plan.cities[center].close;
    double mass = 0.0;
    for (int k : close) mass += plan.copies[k].ybar();
    if (std::abs(mass - 1.0) <= kRenormalizeTol) mass = 1.0;
    double u = unit(rng) * mass;
    int pick = close.back();
    for (int k : close) {
      u -= plan.copies[k].ybar();
      if (u < 0.0) {
        pick = k;
        break;
      }
    }
    draw.copy_open[pick] = true;
  }
  for (int k : plan.unclustered) {
    if (unit(rng) < plan.copies[k].ybar()) draw.copy_open[k] = true;
  }
  std::vector<int> open;
  for (size_t k = 0; k < plan.copies.size(); ++k) {
    if (!draw.copy_open[k]) continue;
    const int i = plan.copies[k].facility;
    open.push_back(i);
    draw.split_facility_cost += plan.inst.facility_costs[i];
  }
  if (open.empty()) {
    open.push_back(static_cast<int>(
        std::max_element(plan.ybar.begin(), plan.ybar.end()) - plan.ybar.begin()));
  }
  draw.solution = Evaluate(plan.inst, std::move(open));
  return draw;
}

Solution run_cs(const Instance& inst, double gamma, std::uint64_t seed) {
  return RoundCs(PrepareCs(inst, gamma), seed).solution;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sq = 0.0;
  int count = 0;

  void Add(double v) {
    sum += v;
    sq += v * v;
    ++count;
  }

  MeanEstimate Get() const {
    MeanEstimate e;
    e.count = count;
    if (count == 0) return e;
    e.mean = sum / count;
    if (count > 1) {
      const double var = (sq - sum * sum / count) / (count - 1);
      e.stderr_ = std::sqrt(std::max(var, 0.0) / count);
    }
    return e;
  }
};

struct NearestCheck {
  int city = 0;
  std::vector<int> copies;
  double bound = 0.0;
  Accumulator acc;
};

}  // namespace

CsMonteCarlo monte_carlo_cs(const CsPlan& plan, int trials,
                            std::uint64_t seed) {
  if (trials < 2) throw DomainError("need at least two trials");
  const Instance& inst = plan.inst;
  std::vector<NearestCheck> nearest;
  std::vector<NearestCheck> center;
  for (int j = 0; j < inst.num_cities(); ++j) {
    const CityProfile& p = plan.cities[j];
    for (const std::vector<int>* set : {&p.close, &p.distant}) {
      if (!set->empty()) {
        nearest.push_back({j, *set, AverageDistance(plan, j, *set), {}});
      }
    }
    const int c = plan.center_of[j];
    if (c == j || p.distant.empty()) continue;
    std::vector<int> rest;
    for (int k : plan.cities[c].close) {
      const bool own =
          std::find(p.close.begin(), p.close.end(), k) != p.close.end() ||
          std::find(p.distant.begin(), p.distant.end(), k) != p.distant.end();
      if (!own) rest.push_back(k);
    }
    if (rest.empty()) continue;
    const double g = plan.gamma;
    center.push_back(
        {j, rest, 3.0 * (g * p.djf + (3.0 - g) * p.d_distant), {}});
  }

  Accumulator facility, total;
  for (int t = 0; t < trials; ++t) {
    const CsDraw draw = RoundCs(plan, TrialSeed(seed, t));
    facility.Add(draw.split_facility_cost);
    total.Add(draw.solution.total);
    for (NearestCheck& check : nearest) {
      double best = std::numeric_limits<double>::infinity();
      for (int k : check.copies) {
        if (draw.copy_open[k]) {
          best = std::min(best, inst.c(plan.copies[k].facility, check.city));
        }
      }
      if (std::isfinite(best)) check.acc.Add(best);
    }
    for (NearestCheck& check : center) {
      for (int k : check.copies) {
        if (draw.copy_open[k]) {
          check.acc.Add(inst.c(plan.copies[k].facility, check.city));
        }
      }
    }
  }

  CsMonteCarlo out;
  out.trials = trials;
  out.facility = facility.Get();
  out.total = total.Get();
  out.expected_facility_cost = plan.expected_facility_cost;
  out.facility_ok = std::abs(out.facility.mean - out.expected_facility_cost) <=
                    3.0 * out.facility.stderr_ + 1e-12;
  auto tally = [](std::vector<NearestCheck>& checks, int& checked, int& failed) {
    for (const NearestCheck& check : checks) {
      const MeanEstimate e = check.acc.Get();
      if (e.count < 2) continue;
      ++checked;
      if (e.mean > check.bound + 3.0 * e.stderr_ + 1e-12) ++failed;
    }
  };
  tally(nearest, out.nearest_checked, out.nearest_failed);
  tally(center, out.center_checked, out.center_failed);
  return out;
}

}  // namespace frlp::facloc
