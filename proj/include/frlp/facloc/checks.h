#pragma once

#include <vector>

#include "frlp/facloc/instance.h"

namespace frlp::facloc {

// A quadruple (i, i2, j, j2) breaking
//   g(c_ij) <= tau (g(c_ij2) + g(c_i2j2) + g(c_i2j)),
// with g = sqrt for squared metrics and the identity otherwise.
struct ClassViolation {
  int i = 0, i2 = 0, j = 0, j2 = 0;
  double slack = 0.0;  // right-hand side minus left-hand side, < 0
};

// Exhaustive O(m^2 n^2) check. kGeneral never reports anything; kMetric uses
// tau = 1 and ignores the argument.
std::vector<ClassViolation> validate_class(const Instance& inst,
                                           CostClass cls, double tau = 1.0,
                                           double tol = 1e-9);
// Checks the class declared by the instance.
std::vector<ClassViolation> validate_class(const Instance& inst,
                                           double tol = 1e-9);

struct OvertightRow {
  double lhs = 0.0;    // sum_j max(alpha_j / gamma - c_ij, 0)
  double slack = 0.0;  // f_i - lhs
  bool ok = true;
};

// One row per facility. gamma = +inf is allowed.
std::vector<OvertightRow> check_overtight(const Instance& inst,
                                          const std::vector<double>& alpha,
                                          double gamma, double tol = 1e-9);

bool AllOvertight(const std::vector<OvertightRow>& rows);

// A triple breaking sqrt(a_j) <= sqrt(a_j2) + sqrt(c_ij2) + sqrt(c_ij).
struct BudgetViolation {
  int i = 0, j = 0, j2 = 0;
  double excess = 0.0;
};

std::vector<BudgetViolation> check_budget_lemma(
    const Instance& inst, const std::vector<double>& alpha, double tol = 1e-9);

}  // namespace frlp::facloc
