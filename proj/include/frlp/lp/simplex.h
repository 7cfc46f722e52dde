#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "frlp/lp/linear_program.h"

namespace frlp::lp {

enum class Status { kOptimal, kUnbounded, kInfeasible };

const char* ToString(Status status);

struct SimplexOptions {
  // Primal feasibility and dual (reduced-cost) optimality tolerance.
  double tolerance = 1e-7;
  // Smallest magnitude accepted as a pivot element.
  double pivot_tolerance = 1e-9;
  // Dantzig pricing is replaced by Bland's rule once the iteration count of a
  // phase exceeds bland_factor * (rows + columns).
  double bland_factor = 10.0;
  // A phase that needs more than cap_factor * (rows + columns) + 1000 pivots
  // raises NumericalError.
  double cap_factor = 60.0;
};

struct SolveStats {
  std::int64_t phase1_iterations = 0;
  std::int64_t phase2_iterations = 0;
  std::int64_t dual_iterations = 0;
  bool used_bland = false;
  int rows = 0;
  int columns = 0;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  // Indexed like LinearProgram::variables(); empty unless optimal.
  std::vector<double> primal;
  // Indexed like LinearProgram::constraints(). Sign convention: for a
  // maximization, <= rows have nonnegative duals and >= rows nonpositive ones;
  // for a minimization the signs flip. Equality rows are unrestricted.
  std::vector<double> dual;
  // Duals of finite variable upper bounds, indexed by variable (0 if none).
  std::vector<double> upper_bound_dual;
  double objective = 0.0;
  SolveStats stats;

  bool optimal() const { return status == Status::kOptimal; }
};

// Two-phase primal simplex on a dense condensed tableau.
//
// Besides a one-shot solve, the tableau can be extended with inequality rows
// after an optimal solve; Reoptimize() then restores optimality from the
// current basis with the dual simplex method. That is what the cutting-plane
// drivers use between rounds.
class Simplex {
 public:
  explicit Simplex(LinearProgram lp, SimplexOptions options = {});
  ~Simplex();
  Simplex(Simplex&&) noexcept;
  Simplex& operator=(Simplex&&) noexcept;

  LpSolution Solve();

  // Only <= and >= rows are accepted. Requires a previous optimal Solve().
  void AddConstraints(std::span<const Constraint> rows);
  LpSolution Reoptimize();

  // The model including rows appended through AddConstraints().
  const LinearProgram& model() const;

 private:
  class Tableau;
  std::unique_ptr<Tableau> tableau_;
};

LpSolution solve(const LinearProgram& lp, double tol = 1e-7);
LpSolution solve(const LinearProgram& lp, const SimplexOptions& options);

}  // namespace frlp::lp
