#include "frlp/facloc/instance.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "frlp/error.h"

namespace frlp::facloc {

const char* ToString(CostClass cls) {
  switch (cls) {
    case CostClass::kGeneral:
      return "general";
    case CostClass::kMetric:
      return "metric";
    case CostClass::kSquaredMetric:
      return "squared-metric";
    case CostClass::kRelaxed:
      return "tau-relaxed";
  }
  return "general";
}

CostClass ParseCostClass(std::string_view name) {
  for (CostClass cls : {CostClass::kGeneral, CostClass::kMetric,
                        CostClass::kSquaredMetric, CostClass::kRelaxed}) {
    if (name == ToString(cls)) return cls;
  }
  throw DomainError("unknown cost class: " + std::string(name));
}

void Instance::Validate() const {
  const int m = num_facilities();
  if (m == 0) throw DimensionError("instance has no facilities");
  if (static_cast<int>(costs.size()) != m) {
    throw DimensionError("cost matrix needs one row per facility");
  }
  const int n = num_cities();
  if (n == 0) throw DimensionError("instance has no cities");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(costs[i].size()) != n) {
      throw DimensionError("ragged cost matrix");
    }
    if (!std::isfinite(facility_costs[i]) || facility_costs[i] < 0.0) {
      throw DomainError("facility costs must be finite and nonnegative");
    }
    for (double c : costs[i]) {
      if (!std::isfinite(c) || c < 0.0) {
        throw DomainError("connection costs must be finite and nonnegative");
      }
    }
  }
  if (cost_class == CostClass::kRelaxed && !(tau >= 1.0 && std::isfinite(tau))) {
    throw DomainError("tau must be finite and >= 1");
  }
}

void Recost(const Instance& inst, Solution& sol) {
  sol.facility_cost = 0.0;
  for (int i : sol.open) sol.facility_cost += inst.facility_costs[i];
  sol.connection_cost = 0.0;
  for (int j = 0; j < inst.num_cities(); ++j) {
    sol.connection_cost += inst.c(sol.assignment[j], j);
  }
  sol.total = sol.facility_cost + sol.connection_cost;
}

Solution Evaluate(const Instance& inst, std::vector<int> open) {
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  if (open.empty()) throw DomainError("at least one facility must be open");
  Solution sol;
  sol.open = std::move(open);
  sol.assignment.resize(inst.num_cities());
  for (int j = 0; j < inst.num_cities(); ++j) {
    int best = sol.open.front();
    for (int i : sol.open) {
      if (inst.c(i, j) < inst.c(best, j)) best = i;
    }
    sol.assignment[j] = best;
  }
  Recost(inst, sol);
  return sol;
}

void CheckFeasible(const Instance& inst, const Solution& sol, double tol) {
  if (static_cast<int>(sol.assignment.size()) != inst.num_cities()) {
    throw InfeasibleInputError("assignment size mismatch");
  }
  for (int i : sol.assignment) {
    if (!std::binary_search(sol.open.begin(), sol.open.end(), i)) {
      throw InfeasibleInputError("city assigned to a closed facility");
    }
  }
  Solution copy = sol;
  Recost(inst, copy);
  const double scale = 1.0 + std::abs(copy.total);
  if (std::abs(copy.total - sol.total) > tol * scale ||
      std::abs(copy.facility_cost - sol.facility_cost) > tol * scale) {
    throw InfeasibleInputError("cost fields disagree with the data");
  }
}

nlohmann::ordered_json ToJson(const Instance& inst) {
  nlohmann::ordered_json j;
  j["facility_costs"] = inst.facility_costs;
  j["costs"] = inst.costs;
  j["class"] = ToString(inst.cost_class);
  if (inst.cost_class == CostClass::kRelaxed) j["tau"] = inst.tau;
  return j;
}

nlohmann::ordered_json ToJson(const Solution& sol) {
  nlohmann::ordered_json j;
  j["open"] = sol.open;
  j["assignment"] = sol.assignment;
  j["facility_cost"] = sol.facility_cost;
  j["connection_cost"] = sol.connection_cost;
  j["total"] = sol.total;
  if (!sol.alpha.empty()) j["alpha"] = sol.alpha;
  if (sol.switches > 0) j["switches"] = sol.switches;
  return j;
}

Instance InstanceFromJson(const nlohmann::json& j) {
  Instance inst;
  try {
    inst.facility_costs = j.at("facility_costs").get<std::vector<double>>();
    inst.costs = j.at("costs").get<std::vector<std::vector<double>>>();
    if (j.contains("class")) {
      inst.cost_class = ParseCostClass(j.at("class").get<std::string>());
    }
    if (j.contains("tau")) inst.tau = j.at("tau").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DimensionError(std::string("bad instance JSON: ") + e.what());
  }
  inst.Validate();
  return inst;
}

}  // namespace frlp::facloc
