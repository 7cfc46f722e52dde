#include "frlp/lp/simplex.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "frlp/error.h"

namespace frlp::lp {

const char* ToString(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kInfeasible:
      return "infeasible";
  }
  return "?";
}

namespace {

enum class VarKind : std::uint8_t {
  kStructural,
  kStructuralNeg,  // negative part of a free variable
  kSlack,
  kSurplus,
  kArtificial,
};

struct VarInfo {
  VarKind kind;
  int ref;  // user variable for structurals, internal row for logicals
};

struct RowInfo {
  int user_row = -1;   // -1 for an upper-bound row
  int bound_var = -1;  // user variable of an upper-bound row
  bool negated = false;
  int unit_var = -1;  // slack or artificial with a +1 column in this row
};

// Entries below this magnitude in the pivot column are treated as zero.
constexpr double kDropTolerance = 1e-14;

inline void Axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  double* __restrict yp = y.data();
  const double* __restrict xp = x.data();
  const std::size_t n = y.size();
  for (std::size_t k = 0; k < n; ++k) yp[k] += a * xp[k];
}

}  // namespace

// Condensed (Tucker) tableau: row r reads
//   x_basic[r] + sum_c T[r][c] * x_nonbasic[c] = T[r][ncols]
// and the objective rows read z + sum_c d[c] * x_nonbasic[c] = d[ncols],
// with the problem internally stated as a maximization.
class Simplex::Tableau {
 public:
  Tableau(LinearProgram lp, SimplexOptions options)
      : lp_(std::move(lp)), opt_(options) {
    lp_.Validate();
    Build();
  }

  LpSolution Solve();
  void AddConstraints(std::span<const Constraint> rows);
  LpSolution Reoptimize();

  const LinearProgram& model() const { return lp_; }

 private:
  enum class Outcome { kOptimal, kUnbounded, kInfeasible };

  int num_rows() const { return static_cast<int>(T_.size()); }
  int rhs() const { return ncols_; }

  int NewVar(VarKind kind, int ref) {
    vars_.push_back({kind, ref});
    where_.push_back(0);
    return static_cast<int>(vars_.size()) - 1;
  }

  void Build();
  void Pivot(int r, int c);
  Outcome PrimalLoop(std::vector<double>& cost, std::int64_t& counter);
  Outcome DualLoop();
  void DriveOutArtificials();
  LpSolution Extract(Status status) const;
  std::int64_t BlandThreshold() const {
    return static_cast<std::int64_t>(opt_.bland_factor *
                                     (num_rows() + ncols_));
  }
  std::int64_t IterationCap() const {
    return static_cast<std::int64_t>(opt_.cap_factor * (num_rows() + ncols_)) +
           1000;
  }

  LinearProgram lp_;
  SimplexOptions opt_;
  bool minimize_ = false;

  std::vector<VarInfo> vars_;
  std::vector<int> pos_var_;  // user var -> internal structural var
  std::vector<int> neg_var_;  // user var -> negative part, or -1
  std::vector<RowInfo> rows_;

  std::vector<std::vector<double>> T_;
  std::vector<double> obj_;
  std::vector<double> phase1_;
  bool phase1_active_ = false;

  std::vector<int> basic_;     // row -> var
  std::vector<int> nonbasic_;  // column -> var
  std::vector<int> where_;     // var -> row (>= 0) or -(column + 1)
  std::vector<char> blocked_;  // column may not enter the basis
  int ncols_ = 0;

  bool optimal_ = false;
  bool used_bland_ = false;
  SolveStats stats_;
};

void Simplex::Tableau::Build() {
  minimize_ = lp_.sense() == Sense::kMinimize;
  const int n = lp_.num_variables();

  // Structural columns first.
  pos_var_.assign(n, -1);
  neg_var_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    pos_var_[j] = NewVar(VarKind::kStructural, j);
    if (lp_.variable(j).lower == -kInfinity) {
      neg_var_[j] = NewVar(VarKind::kStructuralNeg, j);
    }
  }

  struct PendingRow {
    std::vector<std::pair<int, double>> coefs;  // internal var, coef
    Relation relation;
    double rhs;
    RowInfo info;
  };
  std::vector<PendingRow> pending;
  pending.reserve(lp_.num_constraints() + n);
  for (int r = 0; r < lp_.num_constraints(); ++r) {
    const Constraint& row = lp_.constraint(r);
    PendingRow p{{}, row.relation, row.rhs, {}};
    p.info.user_row = r;
    for (const Term& t : row.terms) {
      p.coefs.emplace_back(pos_var_[t.var], t.coef);
      if (neg_var_[t.var] >= 0) p.coefs.emplace_back(neg_var_[t.var], -t.coef);
    }
    pending.push_back(std::move(p));
  }
  for (int j = 0; j < n; ++j) {
    const double upper = lp_.variable(j).upper;
    if (upper == kInfinity) continue;
    PendingRow p{{{pos_var_[j], 1.0}}, Relation::kLessEqual, upper, {}};
    if (neg_var_[j] >= 0) p.coefs.emplace_back(neg_var_[j], -1.0);
    p.info.bound_var = j;
    pending.push_back(std::move(p));
  }

  // Normalize to rhs >= 0 and create logical variables.
  for (auto& p : pending) {
    if (p.rhs < 0.0) {
      p.rhs = -p.rhs;
      for (auto& [v, a] : p.coefs) a = -a;
      if (p.relation == Relation::kLessEqual) {
        p.relation = Relation::kGreaterEqual;
      } else if (p.relation == Relation::kGreaterEqual) {
        p.relation = Relation::kLessEqual;
      }
      p.info.negated = true;
    }
  }

  const int m = static_cast<int>(pending.size());
  std::vector<int> surplus(m, -1);
  for (int r = 0; r < m; ++r) {
    auto& p = pending[r];
    if (p.relation == Relation::kLessEqual) {
      p.info.unit_var = NewVar(VarKind::kSlack, r);
    } else {
      if (p.relation == Relation::kGreaterEqual) {
        surplus[r] = NewVar(VarKind::kSurplus, r);
      }
      p.info.unit_var = NewVar(VarKind::kArtificial, r);
    }
  }

  // Columns: structurals then surpluses.
  for (int j = 0; j < n; ++j) {
    nonbasic_.push_back(pos_var_[j]);
    if (neg_var_[j] >= 0) nonbasic_.push_back(neg_var_[j]);
  }
  for (int r = 0; r < m; ++r) {
    if (surplus[r] >= 0) nonbasic_.push_back(surplus[r]);
  }
  ncols_ = static_cast<int>(nonbasic_.size());
  blocked_.assign(ncols_, 0);
  std::vector<int> column_of(vars_.size(), -1);
  for (int c = 0; c < ncols_; ++c) {
    column_of[nonbasic_[c]] = c;
    where_[nonbasic_[c]] = -(c + 1);
  }

  T_.assign(m, std::vector<double>(ncols_ + 1, 0.0));
  rows_.resize(m);
  basic_.resize(m);
  for (int r = 0; r < m; ++r) {
    auto& p = pending[r];
    for (const auto& [v, a] : p.coefs) T_[r][column_of[v]] += a;
    if (surplus[r] >= 0) T_[r][column_of[surplus[r]]] = -1.0;
    T_[r][ncols_] = p.rhs;
    rows_[r] = p.info;
    basic_[r] = p.info.unit_var;
    where_[p.info.unit_var] = r;
  }

  obj_.assign(ncols_ + 1, 0.0);
  for (int j = 0; j < n; ++j) {
    const double c = minimize_ ? -lp_.objective()[j] : lp_.objective()[j];
    obj_[column_of[pos_var_[j]]] = -c;
    if (neg_var_[j] >= 0) obj_[column_of[neg_var_[j]]] = c;
  }

  phase1_.assign(ncols_ + 1, 0.0);
  for (int r = 0; r < m; ++r) {
    if (vars_[basic_[r]].kind != VarKind::kArtificial) continue;
    phase1_active_ = true;
    for (int c = 0; c <= ncols_; ++c) phase1_[c] -= T_[r][c];
  }
  stats_.rows = m;
  stats_.columns = ncols_;
}

void Simplex::Tableau::Pivot(int r, int c) {
  std::vector<double>& pivot_row = T_[r];
  const double inv = 1.0 / pivot_row[c];
  for (double& v : pivot_row) v *= inv;
  pivot_row[c] = inv;

  auto eliminate = [&](std::vector<double>& row) {
    const double f = row[c];
    if (f == 0.0) return;
    row[c] = 0.0;
    if (std::abs(f) < kDropTolerance) return;
    Axpy(row, -f, pivot_row);
  };
  const int m = num_rows();
  for (int i = 0; i < m; ++i) {
    if (i != r) eliminate(T_[i]);
  }
  eliminate(obj_);
  if (phase1_active_) eliminate(phase1_);

  const int entering = nonbasic_[c];
  const int leaving = basic_[r];
  basic_[r] = entering;
  nonbasic_[c] = leaving;
  where_[entering] = r;
  where_[leaving] = -(c + 1);
  blocked_[c] = vars_[leaving].kind == VarKind::kArtificial ? 1 : 0;
}

Simplex::Tableau::Outcome Simplex::Tableau::PrimalLoop(
    std::vector<double>& cost, std::int64_t& counter) {
  const double tol = opt_.tolerance;
  const double ptol = opt_.pivot_tolerance;
  const std::int64_t bland_after = BlandThreshold();
  const std::int64_t cap = IterationCap();
  std::int64_t iter = 0;
  while (true) {
    const bool bland = iter > bland_after;
    if (bland) used_bland_ = true;
    int enter = -1;
    double best = -tol;
    for (int c = 0; c < ncols_; ++c) {
      if (blocked_[c]) continue;
      const double d = cost[c];
      if (d >= -tol) continue;
      if (bland) {
        if (enter < 0 || nonbasic_[c] < nonbasic_[enter]) enter = c;
      } else if (d < best) {
        best = d;
        enter = c;
      }
    }
    if (enter < 0) return Outcome::kOptimal;

    const int m = num_rows();
    int leave = -1;
    if (bland) {
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = T_[r][enter];
        if (a <= ptol) continue;
        const double ratio = std::max(T_[r][ncols_], 0.0) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave >= 0 &&
             basic_[r] < basic_[leave])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = r;
        } else if (leave < 0) {
          best_ratio = ratio;
          leave = r;
        }
      }
    } else {
      // Harris two-pass ratio test.
      double max_step = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = T_[r][enter];
        if (a <= ptol) continue;
        max_step = std::min(max_step, (std::max(T_[r][ncols_], 0.0) + tol) / a);
      }
      if (max_step < std::numeric_limits<double>::infinity()) {
        double best_pivot = 0.0;
        for (int r = 0; r < m; ++r) {
          const double a = T_[r][enter];
          if (a <= ptol) continue;
          if (std::max(T_[r][ncols_], 0.0) / a <= max_step && a > best_pivot) {
            best_pivot = a;
            leave = r;
          }
        }
      }
    }
    if (leave < 0) return Outcome::kUnbounded;
    Pivot(leave, enter);
    ++iter;
    ++counter;
    if (iter > cap) {
      throw NumericalError("simplex: pivoting stalled beyond the iteration cap");
    }
  }
}

Simplex::Tableau::Outcome Simplex::Tableau::DualLoop() {
  const double tol = opt_.tolerance;
  const double ptol = opt_.pivot_tolerance;
  const std::int64_t bland_after = BlandThreshold();
  const std::int64_t cap = IterationCap();
  std::int64_t iter = 0;
  while (true) {
    const bool bland = iter > bland_after;
    if (bland) used_bland_ = true;
    const int m = num_rows();
    int leave = -1;
    double worst = -tol;
    for (int r = 0; r < m; ++r) {
      const double b = T_[r][ncols_];
      if (b >= -tol) continue;
      if (bland) {
        if (leave < 0 || basic_[r] < basic_[leave]) leave = r;
      } else if (b < worst) {
        worst = b;
        leave = r;
      }
    }
    if (leave < 0) return Outcome::kOptimal;

    const std::vector<double>& row = T_[leave];
    int enter = -1;
    if (bland) {
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int c = 0; c < ncols_; ++c) {
        if (blocked_[c] || row[c] >= -ptol) continue;
        const double ratio = std::max(obj_[c], 0.0) / -row[c];
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && enter >= 0 &&
             nonbasic_[c] < nonbasic_[enter])) {
          best_ratio = std::min(best_ratio, ratio);
          enter = c;
        }
      }
    } else {
      double max_step = std::numeric_limits<double>::infinity();
      for (int c = 0; c < ncols_; ++c) {
        if (blocked_[c] || row[c] >= -ptol) continue;
        max_step = std::min(max_step, (std::max(obj_[c], 0.0) + tol) / -row[c]);
      }
      double best_pivot = 0.0;
      for (int c = 0; c < ncols_; ++c) {
        if (blocked_[c] || row[c] >= -ptol) continue;
        if (std::max(obj_[c], 0.0) / -row[c] <= max_step &&
            -row[c] > best_pivot) {
          best_pivot = -row[c];
          enter = c;
        }
      }
    }
    if (enter < 0) return Outcome::kInfeasible;
    Pivot(leave, enter);
    ++iter;
    ++stats_.dual_iterations;
    if (iter > cap) {
      throw NumericalError(
          "dual simplex: pivoting stalled beyond the iteration cap");
    }
  }
}

void Simplex::Tableau::DriveOutArtificials() {
  for (int r = 0; r < num_rows(); ++r) {
    if (vars_[basic_[r]].kind != VarKind::kArtificial) continue;
    int best = -1;
    double best_abs = opt_.pivot_tolerance;
    for (int c = 0; c < ncols_; ++c) {
      if (blocked_[c]) continue;
      if (vars_[nonbasic_[c]].kind == VarKind::kArtificial) continue;
      const double a = std::abs(T_[r][c]);
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    // A row without an eligible pivot is redundant; its artificial stays
    // basic at zero.
    if (best >= 0) Pivot(r, best);
  }
}

LpSolution Simplex::Tableau::Solve() {
  if (phase1_active_) {
    const Outcome phase1 = PrimalLoop(phase1_, stats_.phase1_iterations);
    (void)phase1;  // phase 1 is bounded by construction
    double scale = 1.0;
    for (int r = 0; r < num_rows(); ++r) {
      scale = std::max(scale, std::abs(T_[r][ncols_]));
    }
    double infeasibility = 0.0;
    for (int r = 0; r < num_rows(); ++r) {
      if (vars_[basic_[r]].kind == VarKind::kArtificial) {
        infeasibility += std::abs(T_[r][ncols_]);
      }
    }
    if (infeasibility > 10.0 * opt_.tolerance * scale) {
      phase1_active_ = false;
      return Extract(Status::kInfeasible);
    }
    DriveOutArtificials();
    phase1_active_ = false;
    for (int c = 0; c < ncols_; ++c) {
      if (vars_[nonbasic_[c]].kind == VarKind::kArtificial) blocked_[c] = 1;
    }
  }
  const Outcome outcome = PrimalLoop(obj_, stats_.phase2_iterations);
  if (outcome == Outcome::kUnbounded) return Extract(Status::kUnbounded);
  optimal_ = true;
  return Extract(Status::kOptimal);
}

void Simplex::Tableau::AddConstraints(std::span<const Constraint> rows) {
  if (!optimal_) {
    throw Error("Simplex::AddConstraints requires an optimal basis");
  }
  for (const Constraint& added : rows) {
    if (added.relation == Relation::kEqual) {
      throw DimensionError("only inequality rows can be appended");
    }
    const int user_row = lp_.AddConstraint(added.name, added.terms,
                                           added.relation, added.rhs);
    const Constraint& row = lp_.constraint(user_row);
    const double sign = row.relation == Relation::kGreaterEqual ? -1.0 : 1.0;

    std::vector<double> fresh(ncols_ + 1, 0.0);
    fresh[ncols_] = sign * row.rhs;
    auto add_internal = [&](int v, double a) {
      if (where_[v] < 0) {
        fresh[-where_[v] - 1] += a;
      } else {
        Axpy(fresh, -a, T_[where_[v]]);
      }
    };
    for (const Term& t : row.terms) {
      add_internal(pos_var_[t.var], sign * t.coef);
      if (neg_var_[t.var] >= 0) add_internal(neg_var_[t.var], -sign * t.coef);
    }
    const int r = num_rows();
    RowInfo info;
    info.user_row = user_row;
    info.negated = sign < 0.0;
    info.unit_var = NewVar(VarKind::kSlack, r);
    T_.push_back(std::move(fresh));
    rows_.push_back(info);
    basic_.push_back(info.unit_var);
    where_[info.unit_var] = r;
  }
  stats_.rows = num_rows();
}

LpSolution Simplex::Tableau::Reoptimize() {
  if (!optimal_) return Solve();
  optimal_ = false;
  if (DualLoop() == Outcome::kInfeasible) {
    return Extract(Status::kInfeasible);
  }
  const Outcome outcome = PrimalLoop(obj_, stats_.phase2_iterations);
  if (outcome == Outcome::kUnbounded) return Extract(Status::kUnbounded);
  optimal_ = true;
  return Extract(Status::kOptimal);
}

LpSolution Simplex::Tableau::Extract(Status status) const {
  LpSolution sol;
  sol.status = status;
  sol.stats = stats_;
  sol.stats.used_bland = used_bland_;
  if (status != Status::kOptimal) return sol;

  auto value = [&](int v) {
    return where_[v] >= 0 ? T_[where_[v]][ncols_] : 0.0;
  };
  const int n = lp_.num_variables();
  sol.primal.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double x = value(pos_var_[j]);
    if (neg_var_[j] >= 0) {
      x -= value(neg_var_[j]);
    } else if (x < 0.0 && x > -opt_.tolerance) {
      x = 0.0;
    }
    sol.primal[j] = x;
  }
  sol.objective = lp_.EvaluateObjective(sol.primal);

  sol.dual.assign(lp_.num_constraints(), 0.0);
  sol.upper_bound_dual.assign(n, 0.0);
  for (int r = 0; r < num_rows(); ++r) {
    const RowInfo& info = rows_[r];
    const int u = info.unit_var;
    double y = where_[u] < 0 ? obj_[-where_[u] - 1] : 0.0;
    if (info.negated) y = -y;
    if (minimize_) y = -y;
    if (info.user_row >= 0) {
      sol.dual[info.user_row] = y;
    } else {
      sol.upper_bound_dual[info.bound_var] = y;
    }
  }
  return sol;
}

Simplex::Simplex(LinearProgram lp, SimplexOptions options)
    : tableau_(std::make_unique<Tableau>(std::move(lp), options)) {}
Simplex::~Simplex() = default;
Simplex::Simplex(Simplex&&) noexcept = default;
Simplex& Simplex::operator=(Simplex&&) noexcept = default;

LpSolution Simplex::Solve() { return tableau_->Solve(); }
void Simplex::AddConstraints(std::span<const Constraint> rows) {
  tableau_->AddConstraints(rows);
}
LpSolution Simplex::Reoptimize() { return tableau_->Reoptimize(); }
const LinearProgram& Simplex::model() const { return tableau_->model(); }

LpSolution solve(const LinearProgram& lp, double tol) {
  SimplexOptions options;
  options.tolerance = tol;
  return solve(lp, options);
}

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options) {
  Simplex simplex(lp, options);
  return simplex.Solve();
}

}  // namespace frlp::lp
