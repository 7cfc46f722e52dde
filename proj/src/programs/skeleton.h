#pragma once

#include <optional>
#include <vector>

#include "frlp/lp/linear_program.h"
#include "frlp/programs/family.h"

namespace frlp::programs::internal {

// One square-root constraint sqrt(A) <= sqrt(B) + sqrt(C) + sqrt(D) of the
// nonlinear program, by variable index. Its linearized rows read
// A - B_i * B - C_i * C - D_i * D <= 0.
struct CutSite {
  int j = 0;
  int l = 0;
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
};

// A max-form program without its linearized square-root rows.
struct Skeleton {
  lp::LinearProgram base;
  std::vector<CutSite> sites;
};

// Not valid for the conic family.
Skeleton MakeSkeleton(FamilyId id, int size, std::optional<double> gamma_f);

lp::Constraint MakeCutRow(const CutSite& site, int index,
                          const Coefficients& coefs);

}  // namespace frlp::programs::internal
