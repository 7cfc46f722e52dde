#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace frlp::facloc {

enum class CostClass { kGeneral, kMetric, kSquaredMetric, kRelaxed };

const char* ToString(CostClass cls);
// Accepts "general", "metric", "squared-metric" and "tau-relaxed".
CostClass ParseCostClass(std::string_view name);

// Uncapacitated facility location: m facilities, n cities.
struct Instance {
  std::vector<double> facility_costs;      // f_i, length m
  std::vector<std::vector<double>> costs;  // c_ij, m rows of length n
  CostClass cost_class = CostClass::kGeneral;
  double tau = 1.0;  // only meaningful for kRelaxed

  int num_facilities() const { return static_cast<int>(facility_costs.size()); }
  int num_cities() const {
    return costs.empty() ? 0 : static_cast<int>(costs.front().size());
  }
  double c(int i, int j) const { return costs[i][j]; }

  // Throws DimensionError on ragged or empty data and DomainError on
  // negative or non-finite costs.
  void Validate() const;
};

struct Solution {
  std::vector<int> open;        // sorted facility indices
  std::vector<int> assignment;  // facility serving each city
  double facility_cost = 0.0;
  double connection_cost = 0.0;
  double total = 0.0;
  // Budgets of the dual-fitting algorithms; empty otherwise.
  std::vector<double> alpha;
  // Number of reassignments performed by A2 when a new facility opens.
  int switches = 0;

  bool operator==(const Solution&) const = default;
};

// Opens `open` and connects every city to its cheapest open facility
// (smallest index on ties).
Solution Evaluate(const Instance& inst, std::vector<int> open);

// Recomputes the cost fields of `sol` from its open set and assignment.
void Recost(const Instance& inst, Solution& sol);

// Throws InfeasibleInputError unless every city is assigned to an open
// facility and the cost fields agree with the data to `tol` (relative).
void CheckFeasible(const Instance& inst, const Solution& sol,
                   double tol = 1e-9);

nlohmann::ordered_json ToJson(const Instance& inst);
nlohmann::ordered_json ToJson(const Solution& sol);
// Throws DimensionError or DomainError on malformed input.
Instance InstanceFromJson(const nlohmann::json& j);

}  // namespace frlp::facloc
