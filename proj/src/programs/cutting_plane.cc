#include "frlp/programs/cutting_plane.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "frlp/error.h"
#include "json.hpp"
#include "skeleton.h"

namespace frlp::programs {

namespace {

using internal::CutSite;
using lp::LpSolution;
using lp::Simplex;
using lp::Status;

// Rows already in the tableau count as satisfied at this slack.
constexpr double kRowTolerance = 1e-9;
// Temporary bound f <= kBoxBound used while the relaxation is unbounded.
constexpr double kBoxBound = 1e3;
constexpr char kBoxRow[] = "box";
constexpr double kBindingDual = 1e-7;

double Value(const std::vector<double>& x, int var) {
  return std::max(0.0, x[var]);
}

double RowViolation(const CutSite& s, const Coefficients& c,
                    const std::vector<double>& x) {
  return x[s.a] - c.b * x[s.b] - c.c * x[s.c] - c.d * x[s.d];
}

void AccumulateStats(lp::SolveStats& total, const lp::SolveStats& s) {
  total.phase1_iterations += s.phase1_iterations;
  total.phase2_iterations += s.phase2_iterations;
  total.dual_iterations += s.dual_iterations;
  total.used_bland = total.used_bland || s.used_bland;
  total.rows = s.rows;
  total.columns = s.columns;
}

void FillMaps(const lp::LinearProgram& lp, const LpSolution& sol,
              FrlpResult& result) {
  result.primal = lp::ToValueMap(lp, sol.primal);
  for (int r = 0; r < lp.num_constraints(); ++r) {
    result.dual[lp.constraint(r).name] = sol.dual[r];
  }
}

FrlpResult SolveSingle(const ProgramFamily& family, const CutOptions& options) {
  FrlpResult result;
  result.family = family;
  const lp::LinearProgram lp =
      family.id == FamilyId::kA1UpperConic
          ? build(family)
          : BuildWithCoefficients(family.id, family.size, {{1.0, 1.0, 1.0}});
  const LpSolution sol = lp::solve(lp, options.simplex);
  result.status = sol.status;
  result.rounds = 1;
  result.solver = sol.stats;
  if (IsMetricFamily(family.id)) {
    result.cut_rows = family.id == FamilyId::kA1MetricLower ||
                              family.id == FamilyId::kA1MetricUpper
                          ? family.size * family.size
                          : family.size * (family.size - 1) / 2;
  }
  if (sol.status == Status::kUnbounded) {
    result.bound = lp::kInfinity;
  } else if (sol.optimal()) {
    result.bound = sol.objective;
    result.trace.push_back(sol.objective);
    result.rounds_detail.push_back(
        {1, sol.objective, 0, 0, lp.num_constraints()});
    FillMaps(lp, sol, result);
  }
  return result;
}

class CutDriver {
 public:
  CutDriver(const ProgramFamily& family, const CutOptions& options)
      : family_(family),
        options_(options),
        skeleton_(internal::MakeSkeleton(family.id, family.size,
                                         family.gamma_f)) {
    for (const auto& t : family.tuples) AddTuple(t);
  }

  FrlpResult Run() {
    const auto start = std::chrono::steady_clock::now();
    FrlpResult result;
    result.family = family_;

    // Initial tuples are materialized everywhere: without them the upper
    // programs start unbounded.
    Simplex simplex = FreshSimplex(/*all_rows=*/false);
    LpSolution sol = simplex.Solve();
    AccumulateStats(result.solver, sol.stats);
    int round = 1;
    for (;;) {
      if (sol.status == Status::kUnbounded && (HasInactiveRows() || !boxed_)) {
        // First materialize every row, then bound f.
        boxed_ = !HasInactiveRows();
        simplex = FreshSimplex(/*all_rows=*/true);
        sol = simplex.Solve();
        AccumulateStats(result.solver, sol.stats);
        continue;
      }
      if (!sol.optimal()) break;
      result.trace.push_back(sol.objective);

      const int tuples_before = static_cast<int>(coefs_.size());
      std::vector<lp::Constraint> rows = ActivateViolatedRows(sol.primal);
      Separate(sol.primal, rows);
      RoundStats stats;
      stats.round = round;
      stats.objective = sol.objective;
      stats.new_tuples = static_cast<int>(coefs_.size()) - tuples_before;
      stats.new_rows = static_cast<int>(rows.size());
      stats.rows = simplex.model().num_constraints();
      result.rounds_detail.push_back(stats);
      if (rows.empty()) break;
      if (round >= options_.max_rounds) {
        result.converged = false;
        break;
      }
      ++round;
      simplex.AddConstraints(rows);
      sol = simplex.Reoptimize();
      AccumulateStats(result.solver, sol.stats);
    }

    result.status = sol.status;
    result.rounds = round;
    result.family.tuples = tuples_;
    result.cuts = static_cast<int>(tuples_.size() - family_.tuples.size());
    result.cut_rows = active_count_;
    if (sol.optimal() && boxed_) {
      // A box row with zero dual can be dropped without changing the optimum.
      const int box = simplex.model().ConstraintIndex(kBoxRow);
      if (std::abs(sol.dual[box]) > kBindingDual) sol.status = Status::kUnbounded;
      result.status = sol.status;
    }
    if (sol.status == Status::kUnbounded) {
      result.bound = lp::kInfinity;
    } else if (sol.optimal()) {
      result.bound = sol.objective;
      FillMaps(simplex.model(), sol, result);
      result.dual.erase(kBoxRow);
      for (int s = 0; s < static_cast<int>(skeleton_.sites.size()); ++s) {
        for (int i = 0; i < static_cast<int>(coefs_.size()); ++i) {
          if (!active_[i][s]) {
            const CutSite& site = skeleton_.sites[s];
            result.dual[Sym("c", site.j, site.l, i + 1)] = 0.0;
          }
        }
      }
    }
    result.time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
  }

 private:
  void AddTuple(const cuts::CutTuple& t) {
    tuples_.push_back(t);
    coefs_.push_back({t.CoefB(), t.CoefC(), t.CoefD()});
    active_.emplace_back(skeleton_.sites.size(), false);
  }

  bool HasInactiveRows() const {
    return active_count_ <
           static_cast<int>(coefs_.size() * skeleton_.sites.size());
  }

  lp::Constraint Activate(int tuple, int site) {
    active_[tuple][site] = true;
    ++active_count_;
    return internal::MakeCutRow(skeleton_.sites[site], tuple + 1,
                                coefs_[tuple]);
  }

  Simplex FreshSimplex(bool all_rows) {
    lp::LinearProgram lp = skeleton_.base;
    if (boxed_) {
      lp.AddConstraint(kBoxRow, {{lp.VariableIndex("f"), 1.0}},
                       lp::Relation::kLessEqual, kBoxBound);
    }
    for (auto& flags : active_) std::fill(flags.begin(), flags.end(), false);
    active_count_ = 0;
    const int initial = static_cast<int>(family_.tuples.size());
    for (int s = 0; s < static_cast<int>(skeleton_.sites.size()); ++s) {
      for (int i = 0; i < static_cast<int>(coefs_.size()); ++i) {
        if (!all_rows && i >= initial) continue;
        lp::Constraint row = Activate(i, s);
        lp.AddConstraint(std::move(row.name), std::move(row.terms),
                         row.relation, row.rhs);
      }
    }
    return Simplex(std::move(lp), options_.simplex);
  }

  // At most one row per site and round: the most violated inactive one.
  std::vector<lp::Constraint> ActivateViolatedRows(
      const std::vector<double>& x) {
    std::vector<lp::Constraint> rows;
    for (int s = 0; s < static_cast<int>(skeleton_.sites.size()); ++s) {
      int best = -1;
      double worst = kRowTolerance;
      for (int i = 0; i < static_cast<int>(coefs_.size()); ++i) {
        if (active_[i][s]) continue;
        const double v = RowViolation(skeleton_.sites[s], coefs_[i], x);
        if (v > worst) {
          worst = v;
          best = i;
        }
      }
      if (best >= 0) rows.push_back(Activate(best, s));
    }
    return rows;
  }

  void Separate(const std::vector<double>& x,
                std::vector<lp::Constraint>& rows) {
    struct Candidate {
      int site;
      double excess;
    };
    std::vector<Candidate> violated;
    for (int s = 0; s < static_cast<int>(skeleton_.sites.size()); ++s) {
      const CutSite& site = skeleton_.sites[s];
      if (site.a == site.b) continue;
      const double a = Value(x, site.a), b = Value(x, site.b),
                   c = Value(x, site.c), d = Value(x, site.d);
      if (cuts::sqrt_satisfied(a, b, c, d, options_.tol_cut)) continue;
      violated.push_back(
          {s, std::sqrt(a) - std::sqrt(b) - std::sqrt(c) - std::sqrt(d)});
    }
    if (options_.mode == CutMode::kMostViolated && violated.size() > 1) {
      auto it = std::max_element(
          violated.begin(), violated.end(),
          [](const Candidate& l, const Candidate& r) {
            return l.excess < r.excess;
          });
      violated = {*it};
    }
    for (const Candidate& cand : violated) {
      const CutSite& site = skeleton_.sites[cand.site];
      auto t = cuts::separate(Value(x, site.a), Value(x, site.b),
                              Value(x, site.c), Value(x, site.d), options_.xi,
                              options_.tol_cut);
      if (!t) continue;
      const bool duplicate = std::any_of(
          tuples_.begin(), tuples_.end(), [&](const cuts::CutTuple& u) {
            return u.NearlyEquals(*t, options_.dedup_tol);
          });
      if (duplicate) continue;
      AddTuple(*t);
      rows.push_back(Activate(static_cast<int>(coefs_.size()) - 1, cand.site));
    }
  }

  ProgramFamily family_;
  CutOptions options_;
  internal::Skeleton skeleton_;
  std::vector<cuts::CutTuple> tuples_;
  std::vector<Coefficients> coefs_;
  std::vector<std::vector<bool>> active_;  // [tuple][site]
  int active_count_ = 0;
  bool boxed_ = false;
};

}  // namespace

FrlpResult solve_with_cuts(const ProgramFamily& family,
                           const CutOptions& options) {
  family.Validate();
  if (!(options.tol_cut >= 0.0) || options.max_rounds < 1) {
    throw DomainError("solve_with_cuts: need tol_cut >= 0 and max_rounds >= 1");
  }
  if (!IsSqrtFamily(family.id)) {
    const auto start = std::chrono::steady_clock::now();
    FrlpResult result = SolveSingle(family, options);
    result.time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
  }
  return CutDriver(family, options).Run();
}

std::string CsvHeader() {
  return "family,size,gamma_f,bound,rounds,cuts,time_ms";
}

std::string ToCsvRow(const FrlpResult& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(5);
  os << ToString(r.family.id) << ',' << r.family.size << ',';
  if (r.family.gamma_f) os << *r.family.gamma_f;
  os << ',';
  if (std::isinf(r.bound)) {
    os << "inf";
  } else {
    os << r.bound;
  }
  os << ',' << r.rounds << ',' << r.cuts << ',';
  os << std::setprecision(1) << r.time_ms;
  return os.str();
}

std::string ToJson(const FrlpResult& r, int indent) {
  nlohmann::ordered_json j;
  j["family"] = ToString(r.family.id);
  j["size"] = r.family.size;
  j["gamma_f"] = r.family.gamma_f ? nlohmann::ordered_json(*r.family.gamma_f)
                                  : nlohmann::ordered_json(nullptr);
  j["status"] = lp::ToString(r.status);
  j["bound"] = std::isinf(r.bound) ? nlohmann::ordered_json("inf")
                                   : nlohmann::ordered_json(r.bound);
  j["converged"] = r.converged;
  j["rounds"] = r.rounds;
  j["cuts"] = r.cuts;
  j["cut_rows"] = r.cut_rows;
  j["time_ms"] = r.time_ms;
  auto& tuples = j["tuples"] = nlohmann::ordered_json::array();
  for (const auto& t : r.family.tuples) {
    tuples.push_back({t.beta(), t.gamma(), t.delta()});
  }
  j["trace"] = r.trace;
  j["solver"] = {{"phase1_iterations", r.solver.phase1_iterations},
                 {"phase2_iterations", r.solver.phase2_iterations},
                 {"dual_iterations", r.solver.dual_iterations},
                 {"used_bland", r.solver.used_bland},
                 {"rows", r.solver.rows},
                 {"columns", r.solver.columns}};
  return j.dump(indent);
}

}  // namespace frlp::programs
