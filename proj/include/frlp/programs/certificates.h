#pragma once

#include "frlp/lp/linear_program.h"
#include "frlp/programs/family.h"

namespace frlp::programs {

// The min-form program whose feasible points expand_upfrp_solution accepts:
// the conic program for kA1UpperConic, otherwise the dual of the max-form
// upper program (A1/A2, square-root or metric).
lp::LinearProgram UpperMinForm(const ProgramFamily& upper);

// The program the expanded point lives in: the dual of the lower program at
// size p * t (the conic dual for kA1UpperConic).
lp::LinearProgram ExpandedMinForm(const ProgramFamily& upper, int p);

// Replicates a feasible point of UpperMinForm(upper) p times. With
// n^ = ceil(n / p):
//   a_j = p a'_j^ - (p j^ - j)(a'_j^ - a'_{j^-1}),    a'_0 = a'_t = 0
//   b_jl = b'_j^l^ - (p l^ - l) / p (b'_j^l^ - b'_j^,l^-1)
//   c_jli = c'_j^l^i / p,  e_jl = e'_j^l^ / p,  h_j = h'_j^ / p,  gamma = gamma'
//   phi_jl = phi'_j^l^ / p,  theta_jl = theta'_j^l^ / p^2
// with c, e set to 0 inside a diagonal block where the upper program has no
// such variable. Throws InfeasibleInputError if `solution` violates
// UpperMinForm(upper) by more than `tol`.
lp::ValueMap expand_upfrp_solution(const ProgramFamily& upper,
                                   const lp::ValueMap& solution, int p,
                                   double tol = 1e-6);

struct GapCertificate {
  double epsilon = 0.0;  // max(0, max_j alpha_j - d_j)
  double upper_value = 0.0;
  double certified_lower = 0.0;  // upper_value / (1 + epsilon)
  lp::ValueMap repaired;  // feasible for the lower counterpart
};

// For a feasible point of an upper max-form program (A1/A2, square-root or
// metric): sets x_jj = max(0, alpha_j - d_j), f += epsilon, scales by
// 1 / (1 + epsilon) and checks the result against the lower counterpart.
// Throws InfeasibleInputError if the repaired point is infeasible.
GapCertificate gap_certificate(const ProgramFamily& upper,
                               const lp::ValueMap& upper_primal,
                               double tol = 1e-6);

}  // namespace frlp::programs
