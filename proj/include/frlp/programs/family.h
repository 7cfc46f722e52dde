#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frlp/cuts/sqrt_cuts.h"
#include "frlp/lp/linear_program.h"

namespace frlp::programs {

enum class FamilyId {
  kA1Lower,
  kA1UpperConic,
  kA1Upper,
  kA1MetricLower,
  kA1MetricUpper,
  kA2Lower,
  kA2Upper,
  kA2MetricLower,
  kA2MetricUpper,
  kA2BifactorUpper,
};

// "a1-lower", "a1-upper-conic", ..., "a2-bifactor-upper".
const char* ToString(FamilyId id);
std::optional<FamilyId> ParseFamily(std::string_view name);
const std::vector<FamilyId>& AllFamilies();

// Families whose square-root constraints are linearized by cut tuples.
bool IsSqrtFamily(FamilyId id);
bool IsMetricFamily(FamilyId id);
// Upper-bound (fixed size t) programs, including the conic min form.
bool IsUpperFamily(FamilyId id);
bool IsA2Family(FamilyId id);
// The family whose program differs from `id` only in the diagonal
// max(alpha - d, 0) terms (lower <-> upper). Throws DomainError for the conic
// and bi-factor families.
FamilyId Counterpart(FamilyId id);

struct ProgramFamily {
  FamilyId id = FamilyId::kA1Lower;
  int size = 1;  // k for lower programs, t for upper programs
  std::optional<double> gamma_f;  // bi-factor only
  std::vector<cuts::CutTuple> tuples;  // square-root families only

  // Defaults the tuple set to {(1, 1, 1)} for square-root families.
  static ProgramFamily Make(FamilyId id, int size,
                            std::optional<double> gamma_f = std::nullopt);

  // Throws DomainError on size < 1, an empty tuple set for a square-root
  // family, or a missing / invalid gamma_f.
  void Validate() const;
};

// Exact LP of the selected program. Maximization families carry the
// normalization row "gamma" (f + sum d <= 1, or sum d <= 1 for the
// bi-factor family). Variables are named alpha[j], d[j], f, x[j,l], r[j,l];
// rows are named after their dual variables: gamma, a[j], b[j,l], c[j,l,i],
// e[j,l], h[j]. The conic upper family is the min program over gamma,
// phi[j,l], theta[j,l] with rows alpha[j], d[j], f.
lp::LinearProgram build(const ProgramFamily& family);

// Coefficient triple (B, C, D) of one linearized square-root row.
struct Coefficients {
  double b = 3.0;
  double c = 3.0;
  double d = 3.0;
};

// Same as build() but with explicit coefficient triples in place of the
// tuple set; row c[j,l,i] uses coefs[i - 1]. Not valid for the conic family.
lp::LinearProgram BuildWithCoefficients(FamilyId id, int size,
                                        const std::vector<Coefficients>& coefs,
                                        std::optional<double> gamma_f = {});

std::vector<Coefficients> CoefficientsOf(
    const std::vector<cuts::CutTuple>& tuples);

// Min-form programs, built symbol by symbol (not through dualize()).
// Dual of the relaxed A1 program with all coefficients 3 (gamma, phi, theta).
lp::LinearProgram BuildA1ConicDual(int k);
// Dual of the A1 lower program at size k.
lp::LinearProgram BuildA1LowerDual(int k, const std::vector<Coefficients>& coefs);
// Minimization upper program for A1 at size t.
lp::LinearProgram BuildA1UpperMin(int t, const std::vector<Coefficients>& coefs);
// Dual of the A2 lower program at size k.
lp::LinearProgram BuildA2LowerDual(int k, const std::vector<Coefficients>& coefs);
// Minimization upper program for A2 at size t.
lp::LinearProgram BuildA2UpperMin(int t, const std::vector<Coefficients>& coefs);

// Variable and row naming helpers: Sym("c", 1, 2, 3) == "c[1,2,3]".
std::string Sym(std::string_view base, int i);
std::string Sym(std::string_view base, int i, int j);
std::string Sym(std::string_view base, int i, int j, int k);

}  // namespace frlp::programs
