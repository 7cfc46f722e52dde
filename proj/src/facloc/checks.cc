#include "frlp/facloc/checks.h"

#include <cmath>

#include "frlp/error.h"

namespace frlp::facloc {

std::vector<ClassViolation> validate_class(const Instance& inst,
                                           CostClass cls, double tau,
                                           double tol) {
  inst.Validate();
  std::vector<ClassViolation> out;
  if (cls == CostClass::kGeneral) return out;
  if (cls == CostClass::kMetric) tau = 1.0;
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    throw DomainError("tau must be finite and >= 1");
  }
  const bool root = cls == CostClass::kSquaredMetric;
  auto g = [root](double c) { return root ? std::sqrt(c) : c; };
  const int m = inst.num_facilities();
  const int n = inst.num_cities();
  for (int i = 0; i < m; ++i) {
    for (int i2 = 0; i2 < m; ++i2) {
      for (int j = 0; j < n; ++j) {
        const double lhs = g(inst.c(i, j));
        for (int j2 = 0; j2 < n; ++j2) {
          const double rhs =
              tau * (g(inst.c(i, j2)) + g(inst.c(i2, j2)) + g(inst.c(i2, j)));
          const double slack = rhs - lhs;
          if (slack < -tol * (1.0 + lhs)) out.push_back({i, i2, j, j2, slack});
        }
      }
    }
  }
  return out;
}

std::vector<ClassViolation> validate_class(const Instance& inst, double tol) {
  return validate_class(inst, inst.cost_class, inst.tau, tol);
}

std::vector<OvertightRow> check_overtight(const Instance& inst,
                                          const std::vector<double>& alpha,
                                          double gamma, double tol) {
  inst.Validate();
  if (static_cast<int>(alpha.size()) != inst.num_cities()) {
    throw DimensionError("alpha needs one entry per city");
  }
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  std::vector<OvertightRow> rows(inst.num_facilities());
  for (int i = 0; i < inst.num_facilities(); ++i) {
    OvertightRow& row = rows[i];
    for (int j = 0; j < inst.num_cities(); ++j) {
      row.lhs += std::max(alpha[j] / gamma - inst.c(i, j), 0.0);
    }
    const double f = inst.facility_costs[i];
    row.slack = f - row.lhs;
    row.ok = row.slack >= -tol * (1.0 + f);
  }
  return rows;
}

bool AllOvertight(const std::vector<OvertightRow>& rows) {
  for (const OvertightRow& row : rows) {
    if (!row.ok) return false;
  }
  return true;
}

std::vector<BudgetViolation> check_budget_lemma(
    const Instance& inst, const std::vector<double>& alpha, double tol) {
  inst.Validate();
  const int n = inst.num_cities();
  if (static_cast<int>(alpha.size()) != n) {
    throw DimensionError("alpha needs one entry per city");
  }
  std::vector<BudgetViolation> out;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < n; ++j) {
      const double lhs = std::sqrt(alpha[j]);
      for (int j2 = 0; j2 < n; ++j2) {
        const double rhs = std::sqrt(alpha[j2]) + std::sqrt(inst.c(i, j2)) +
                           std::sqrt(inst.c(i, j));
        if (lhs > rhs + tol * (1.0 + lhs)) out.push_back({i, j, j2, lhs - rhs});
      }
    }
  }
  return out;
}

}  // namespace frlp::facloc
