#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace frlp::lp {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

const char* ToString(Sense sense);
const char* ToString(Relation relation);

struct Variable {
  std::string name;
  // Free-form tag naming the symbol family the variable belongs to
  // (e.g. "alpha", "d", "x").
  std::string role;
  double lower = 0.0;  // 0 or -inf
  double upper = kInfinity;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// Sparse linear program with named variables and constraints.
//
// Variable lower bounds are restricted to {0, -inf}; upper bounds may be any
// value >= lower. Names of variables (and of constraints) are unique.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::kMaximize) : sense_(sense) {}

  Sense sense() const { return sense_; }
  void set_sense(Sense sense) { sense_ = sense; }

  // Returns the index of the new variable. Throws DimensionError on a
  // duplicate name or unsupported bounds.
  int AddVariable(std::string name, std::string role = {}, double lower = 0.0,
                  double upper = kInfinity);

  // Duplicate variables inside `terms` are merged and exact zeros dropped.
  int AddConstraint(std::string name, std::vector<Term> terms,
                    Relation relation, double rhs);

  void SetObjective(int var, double coef);
  void AddObjective(int var, double coef);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  const Variable& variable(int i) const { return variables_.at(i); }
  const Constraint& constraint(int i) const { return constraints_.at(i); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }

  std::optional<int> FindVariable(std::string_view name) const;
  std::optional<int> FindConstraint(std::string_view name) const;
  // Like Find* but throws MissingVariableError / DimensionError.
  int VariableIndex(std::string_view name) const;
  int ConstraintIndex(std::string_view name) const;

  // Checks every invariant (finite coefficients, indices in range, unique
  // names). Throws DimensionError on the first violation.
  void Validate() const;

  double EvaluateObjective(const std::vector<double>& x) const;
  double EvaluateRow(int row, const std::vector<double>& x) const;

 private:
  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> variable_index_;
  std::unordered_map<std::string, int> constraint_index_;
};

using ValueMap = std::unordered_map<std::string, double>;

// Converts between dense vectors (indexed like lp.variables()) and name maps.
ValueMap ToValueMap(const LinearProgram& lp, const std::vector<double>& x);
// Throws MissingVariableError when `values` lacks a variable of `lp`.
std::vector<double> FromValueMap(const LinearProgram& lp, const ValueMap& values);

struct Violation {
  int constraint = -1;  // -1 for a variable bound
  std::string name;
  // rhs - lhs for <=, lhs - rhs for >=, -|lhs - rhs| for =; negative means
  // violated.
  double slack = 0.0;
  double amount() const { return -slack; }
};

// Returns the constraints (and variable bounds) violated by more than `tol`.
std::vector<Violation> check_point(const LinearProgram& lp,
                                   const std::vector<double>& x, double tol);
std::vector<Violation> check_point(const LinearProgram& lp,
                                   const ValueMap& point, double tol);

}  // namespace frlp::lp
