#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "frlp/lp/linear_program.h"

namespace frlp::lp {

// Standard LP dual.
//
// Every constraint of `lp` becomes a dual variable carrying the constraint's
// name, and every primal variable becomes a dual row carrying the variable's
// name. Finite upper bounds are dualized as extra rows named "ub:<var>".
// Constraints are first oriented (<= for a maximization, >= for a
// minimization) so that dual variables are either nonnegative or free.
LinearProgram dualize(const LinearProgram& lp);

// Compares two programs after a canonical normalization of each row (<= rows
// are negated into >= rows, equality rows are scaled so that the term with
// the lexicographically smallest variable name is positive). Variables and
// rows are matched by name. Returns a description of the first difference,
// or nullopt when the programs agree within `tol`.
std::optional<std::string> CompareStructure(const LinearProgram& a,
                                            const LinearProgram& b,
                                            double tol = 1e-12);

// Writes `lp` in CPLEX LP text format. Characters the format does not allow
// in names are replaced ('[' -> '(', ']' -> ')', others -> '_').
void WriteLpFormat(const LinearProgram& lp, std::ostream& out);

}  // namespace frlp::lp
