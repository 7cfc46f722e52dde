#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frlp/cuts/sqrt_cuts.h"
#include "frlp/lp/linear_program.h"
#include "frlp/lp/simplex.h"
#include "frlp/programs/family.h"

namespace frlp::programs {

enum class CutMode {
  kAllViolated,   // one cut per violated square-root constraint
  kMostViolated,  // only the largest violation of each round
};

struct CutOptions {
  double tol_cut = 1e-6;
  int max_rounds = 200;
  CutMode mode = CutMode::kAllViolated;
  std::pair<double, double> xi = {0.25, 0.25};
  // Componentwise relative distance below which a new tuple is a duplicate.
  double dedup_tol = 1e-6;
  lp::SimplexOptions simplex;
};

struct RoundStats {
  int round = 0;
  double objective = 0.0;
  int new_tuples = 0;
  int new_rows = 0;
  int rows = 0;
};

struct FrlpResult {
  ProgramFamily family;  // tuple set as of termination
  lp::Status status = lp::Status::kOptimal;
  // Final objective; +inf when unbounded.
  double bound = 0.0;
  // False when max_rounds was reached with violations remaining.
  bool converged = true;
  int rounds = 0;
  int cuts = 0;      // tuples added beyond the initial set
  int cut_rows = 0;  // linearized rows in the final LP
  std::vector<double> trace;
  std::vector<RoundStats> rounds_detail;
  lp::SolveStats solver;
  double time_ms = 0.0;
  // Optimal point of the max-form program, by variable name.
  lp::ValueMap primal;
  // Row duals of the max-form program, by row name; rows that were never
  // materialized are reported as 0. For max families this is an optimal
  // point of the corresponding min-form program.
  lp::ValueMap dual;
};

// Cutting-plane solve of a program family.
//
// Square-root families iterate: solve, scan every square-root constraint of
// the nonlinear program at the optimum, turn each violation beyond tol_cut
// into a new tuple, re-solve. Metric families and the conic family are a
// single LP solve. Linearized rows of a tuple are instantiated at every
// index pair; rows that the current optimum already satisfies are kept out of
// the tableau until they become violated, so the reported optimum is that of
// the full program at the final tuple set.
FrlpResult solve_with_cuts(const ProgramFamily& family,
                           const CutOptions& options = {});

std::string CsvHeader();
// family,size,gamma_f,bound,rounds,cuts,time_ms
std::string ToCsvRow(const FrlpResult& result);
// Full record including tuples and trace.
std::string ToJson(const FrlpResult& result, int indent = 2);

}  // namespace frlp::programs
