#include "frlp/lp/linear_program.h"

#include <algorithm>
#include <cmath>

#include "frlp/error.h"

namespace frlp::lp {

const char* ToString(Sense sense) {
  return sense == Sense::kMinimize ? "minimize" : "maximize";
}

const char* ToString(Relation relation) {
  switch (relation) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kEqual:
      return "=";
    case Relation::kGreaterEqual:
      return ">=";
  }
  return "?";
}

int LinearProgram::AddVariable(std::string name, std::string role,
                               double lower, double upper) {
  if (lower != 0.0 && lower != -kInfinity) {
    throw DimensionError("variable '" + name +
                         "': lower bound must be 0 or -inf");
  }
  if (std::isnan(upper) || upper < lower) {
    throw DimensionError("variable '" + name + "': invalid upper bound");
  }
  const int index = num_variables();
  if (!variable_index_.emplace(name, index).second) {
    throw DimensionError("duplicate variable name '" + name + "'");
  }
  variables_.push_back({std::move(name), std::move(role), lower, upper});
  objective_.push_back(0.0);
  return index;
}

int LinearProgram::AddConstraint(std::string name, std::vector<Term> terms,
                                 Relation relation, double rhs) {
  if (!std::isfinite(rhs)) {
    throw DimensionError("constraint '" + name + "': rhs must be finite");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw DimensionError("constraint '" + name +
                           "' references an unknown variable");
    }
    if (!std::isfinite(t.coef)) {
      throw DimensionError("constraint '" + name +
                           "' has a non-finite coefficient");
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  const int index = num_constraints();
  if (!constraint_index_.emplace(name, index).second) {
    throw DimensionError("duplicate constraint name '" + name + "'");
  }
  constraints_.push_back({std::move(name), std::move(merged), relation, rhs});
  return index;
}

void LinearProgram::SetObjective(int var, double coef) {
  if (var < 0 || var >= num_variables() || !std::isfinite(coef)) {
    throw DimensionError("invalid objective term");
  }
  objective_[var] = coef;
}

void LinearProgram::AddObjective(int var, double coef) {
  if (var < 0 || var >= num_variables()) {
    throw DimensionError("invalid objective term");
  }
  SetObjective(var, objective_[var] + coef);
}

std::optional<int> LinearProgram::FindVariable(std::string_view name) const {
  auto it = variable_index_.find(std::string(name));
  if (it == variable_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LinearProgram::FindConstraint(std::string_view name) const {
  auto it = constraint_index_.find(std::string(name));
  if (it == constraint_index_.end()) return std::nullopt;
  return it->second;
}

int LinearProgram::VariableIndex(std::string_view name) const {
  auto index = FindVariable(name);
  if (!index) {
    throw MissingVariableError("unknown variable '" + std::string(name) + "'");
  }
  return *index;
}

int LinearProgram::ConstraintIndex(std::string_view name) const {
  auto index = FindConstraint(name);
  if (!index) {
    throw DimensionError("unknown constraint '" + std::string(name) + "'");
  }
  return *index;
}

void LinearProgram::Validate() const {
  if (objective_.size() != variables_.size()) {
    throw DimensionError("objective size mismatch");
  }
  for (double c : objective_) {
    if (!std::isfinite(c)) throw DimensionError("non-finite objective");
  }
  for (const Constraint& row : constraints_) {
    if (!std::isfinite(row.rhs)) {
      throw DimensionError("constraint '" + row.name + "': non-finite rhs");
    }
    for (const Term& t : row.terms) {
      if (t.var < 0 || t.var >= num_variables() || !std::isfinite(t.coef)) {
        throw DimensionError("constraint '" + row.name + "': bad term");
      }
    }
  }
  if (variable_index_.size() != variables_.size() ||
      constraint_index_.size() != constraints_.size()) {
    throw DimensionError("non-unique names");
  }
}

double LinearProgram::EvaluateObjective(const std::vector<double>& x) const {
  double sum = 0.0;
  for (int i = 0; i < num_variables(); ++i) sum += objective_[i] * x.at(i);
  return sum;
}

double LinearProgram::EvaluateRow(int row, const std::vector<double>& x) const {
  double sum = 0.0;
  for (const Term& t : constraints_.at(row).terms) sum += t.coef * x.at(t.var);
  return sum;
}

ValueMap ToValueMap(const LinearProgram& lp, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != lp.num_variables()) {
    throw DimensionError("point has the wrong dimension");
  }
  ValueMap values;
  values.reserve(x.size());
  for (int i = 0; i < lp.num_variables(); ++i) {
    values.emplace(lp.variable(i).name, x[i]);
  }
  return values;
}

std::vector<double> FromValueMap(const LinearProgram& lp,
                                 const ValueMap& values) {
  std::vector<double> x(lp.num_variables());
  for (int i = 0; i < lp.num_variables(); ++i) {
    auto it = values.find(lp.variable(i).name);
    if (it == values.end()) {
      throw MissingVariableError("point has no value for '" +
                                 lp.variable(i).name + "'");
    }
    x[i] = it->second;
  }
  return x;
}

std::vector<Violation> check_point(const LinearProgram& lp,
                                   const std::vector<double>& x, double tol) {
  if (static_cast<int>(x.size()) != lp.num_variables()) {
    throw DimensionError("point has the wrong dimension");
  }
  std::vector<Violation> out;
  for (int i = 0; i < lp.num_variables(); ++i) {
    const Variable& v = lp.variable(i);
    const double slack = std::min(x[i] - v.lower, v.upper - x[i]);
    if (slack < -tol) out.push_back({-1, "bound:" + v.name, slack});
  }
  for (int r = 0; r < lp.num_constraints(); ++r) {
    const Constraint& row = lp.constraint(r);
    const double lhs = lp.EvaluateRow(r, x);
    double slack = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual:
        slack = row.rhs - lhs;
        break;
      case Relation::kGreaterEqual:
        slack = lhs - row.rhs;
        break;
      case Relation::kEqual:
        slack = -std::abs(lhs - row.rhs);
        break;
    }
    if (slack < -tol) out.push_back({r, row.name, slack});
  }
  return out;
}

std::vector<Violation> check_point(const LinearProgram& lp,
                                   const ValueMap& point, double tol) {
  return check_point(lp, FromValueMap(lp, point), tol);
}

}  // namespace frlp::lp
