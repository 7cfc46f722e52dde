#include "frlp/programs/family.h"

#include <array>
#include <cmath>
#include <utility>

#include "frlp/error.h"
#include "skeleton.h"

namespace frlp::programs {

using lp::LinearProgram;
using lp::Relation;
using lp::Term;

namespace {

struct FamilyInfo {
  FamilyId id;
  const char* name;
};

constexpr std::array<FamilyInfo, 10> kFamilies = {{
    {FamilyId::kA1Lower, "a1-lower"},
    {FamilyId::kA1UpperConic, "a1-upper-conic"},
    {FamilyId::kA1Upper, "a1-upper"},
    {FamilyId::kA1MetricLower, "a1-metric-lower"},
    {FamilyId::kA1MetricUpper, "a1-metric-upper"},
    {FamilyId::kA2Lower, "a2-lower"},
    {FamilyId::kA2Upper, "a2-upper"},
    {FamilyId::kA2MetricLower, "a2-metric-lower"},
    {FamilyId::kA2MetricUpper, "a2-metric-upper"},
    {FamilyId::kA2BifactorUpper, "a2-bifactor-upper"},
}};

}  // namespace

const char* ToString(FamilyId id) {
  for (const auto& info : kFamilies) {
    if (info.id == id) return info.name;
  }
  return "?";
}

std::optional<FamilyId> ParseFamily(std::string_view name) {
  for (const auto& info : kFamilies) {
    if (name == info.name) return info.id;
  }
  return std::nullopt;
}

const std::vector<FamilyId>& AllFamilies() {
  static const std::vector<FamilyId> all = [] {
    std::vector<FamilyId> out;
    for (const auto& info : kFamilies) out.push_back(info.id);
    return out;
  }();
  return all;
}

bool IsSqrtFamily(FamilyId id) {
  switch (id) {
    case FamilyId::kA1Lower:
    case FamilyId::kA1Upper:
    case FamilyId::kA2Lower:
    case FamilyId::kA2Upper:
    case FamilyId::kA2BifactorUpper:
      return true;
    default:
      return false;
  }
}

bool IsMetricFamily(FamilyId id) {
  return id == FamilyId::kA1MetricLower || id == FamilyId::kA1MetricUpper ||
         id == FamilyId::kA2MetricLower || id == FamilyId::kA2MetricUpper;
}

bool IsUpperFamily(FamilyId id) {
  switch (id) {
    case FamilyId::kA1UpperConic:
    case FamilyId::kA1Upper:
    case FamilyId::kA1MetricUpper:
    case FamilyId::kA2Upper:
    case FamilyId::kA2MetricUpper:
    case FamilyId::kA2BifactorUpper:
      return true;
    default:
      return false;
  }
}

bool IsA2Family(FamilyId id) {
  return id == FamilyId::kA2Lower || id == FamilyId::kA2Upper ||
         id == FamilyId::kA2MetricLower || id == FamilyId::kA2MetricUpper ||
         id == FamilyId::kA2BifactorUpper;
}

FamilyId Counterpart(FamilyId id) {
  switch (id) {
    case FamilyId::kA1Lower:
      return FamilyId::kA1Upper;
    case FamilyId::kA1Upper:
      return FamilyId::kA1Lower;
    case FamilyId::kA1MetricLower:
      return FamilyId::kA1MetricUpper;
    case FamilyId::kA1MetricUpper:
      return FamilyId::kA1MetricLower;
    case FamilyId::kA2Lower:
      return FamilyId::kA2Upper;
    case FamilyId::kA2Upper:
      return FamilyId::kA2Lower;
    case FamilyId::kA2MetricLower:
      return FamilyId::kA2MetricUpper;
    case FamilyId::kA2MetricUpper:
      return FamilyId::kA2MetricLower;
    default:
      throw DomainError(std::string("family ") + ToString(id) +
                        " has no lower/upper counterpart");
  }
}

ProgramFamily ProgramFamily::Make(FamilyId id, int size,
                                  std::optional<double> gamma_f) {
  ProgramFamily family;
  family.id = id;
  family.size = size;
  family.gamma_f = gamma_f;
  if (IsSqrtFamily(id)) family.tuples = {cuts::kUnitTuple};
  return family;
}

void ProgramFamily::Validate() const {
  if (size < 1) throw DomainError("program size must be at least 1");
  if (IsSqrtFamily(id) && tuples.empty()) {
    throw DomainError("square-root families need at least one cut tuple");
  }
  if (id == FamilyId::kA2BifactorUpper) {
    if (!gamma_f || !std::isfinite(*gamma_f) || *gamma_f < 1.0) {
      throw DomainError("bi-factor family needs gamma_f >= 1");
    }
  } else if (gamma_f) {
    throw DomainError("gamma_f only applies to the bi-factor family");
  }
}

std::string Sym(std::string_view base, int i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string Sym(std::string_view base, int i, int j) {
  return std::string(base) + "[" + std::to_string(i) + "," +
         std::to_string(j) + "]";
}

std::string Sym(std::string_view base, int i, int j, int k) {
  return std::string(base) + "[" + std::to_string(i) + "," +
         std::to_string(j) + "," + std::to_string(k) + "]";
}

std::vector<Coefficients> CoefficientsOf(
    const std::vector<cuts::CutTuple>& tuples) {
  std::vector<Coefficients> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) out.push_back({t.CoefB(), t.CoefC(), t.CoefD()});
  return out;
}

namespace internal {

Skeleton MakeSkeleton(FamilyId id, int n, std::optional<double> gamma_f) {
  if (id == FamilyId::kA1UpperConic) {
    throw DomainError("the conic family has no square-root rows");
  }
  if (n < 1) throw DomainError("program size must be at least 1");
  const bool a2 = IsA2Family(id);
  const bool upper = IsUpperFamily(id);
  const bool bifactor = id == FamilyId::kA2BifactorUpper;

  Skeleton s;
  LinearProgram& lp = s.base;
  lp.set_sense(lp::Sense::kMaximize);
  std::vector<int> alpha(n + 1), d(n + 1);
  for (int j = 1; j <= n; ++j) alpha[j] = lp.AddVariable(Sym("alpha", j), "alpha");
  for (int j = 1; j <= n; ++j) d[j] = lp.AddVariable(Sym("d", j), "d");
  const int f = lp.AddVariable("f", "f");
  // x[j][l]; -1 where the variable does not exist.
  std::vector<std::vector<int>> x(n + 1, std::vector<int>(n + 1, -1));
  std::vector<std::vector<int>> r(n + 1, std::vector<int>(n + 1, -1));
  for (int j = 1; j <= n; ++j) {
    for (int l = a2 ? 1 : j; l <= n; ++l) {
      x[j][l] = lp.AddVariable(Sym("x", j, l), "x");
    }
  }
  if (a2) {
    for (int j = 1; j <= n; ++j) {
      for (int l = j + 1; l <= n; ++l) r[j][l] = lp.AddVariable(Sym("r", j, l), "r");
    }
  }

  for (int j = 1; j <= n; ++j) lp.SetObjective(alpha[j], 1.0);
  if (bifactor) lp.SetObjective(f, -*gamma_f);

  std::vector<Term> norm;
  if (!bifactor) norm.push_back({f, 1.0});
  for (int j = 1; j <= n; ++j) norm.push_back({d[j], 1.0});
  lp.AddConstraint("gamma", norm, Relation::kLessEqual, 1.0);

  for (int j = 1; j < n; ++j) {
    lp.AddConstraint(Sym("a", j), {{alpha[j], 1.0}, {alpha[j + 1], -1.0}},
                     Relation::kLessEqual, 0.0);
  }
  if (a2) {
    for (int j = 1; j <= n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        lp.AddConstraint(Sym("b", j, l), {{r[j][l + 1], 1.0}, {r[j][l], -1.0}},
                         Relation::kLessEqual, 0.0);
      }
    }
  }

  if (!a2) {
    for (int j = 1; j <= n; ++j) {
      for (int l = upper ? j + 1 : j; l <= n; ++l) {
        lp.AddConstraint(Sym("e", j, l),
                         {{alpha[j], 1.0}, {d[l], -1.0}, {x[j][l], -1.0}},
                         Relation::kLessEqual, 0.0);
      }
    }
    for (int j = 1; j <= n; ++j) {
      std::vector<Term> row;
      for (int l = j; l <= n; ++l) row.push_back({x[j][l], 1.0});
      row.push_back({f, -1.0});
      lp.AddConstraint(Sym("h", j), row, Relation::kLessEqual, 0.0);
    }
    for (int j = 1; j <= n; ++j) {
      for (int l = 1; l <= n; ++l) {
        s.sites.push_back({j, l, alpha[j], alpha[l], d[j], d[l]});
      }
    }
  } else {
    for (int j = 1; j <= n; ++j) {
      for (int l = 1; l <= n; ++l) {
        if (j < l) {
          lp.AddConstraint(Sym("e", j, l),
                           {{r[j][l], 1.0}, {d[j], -1.0}, {x[j][l], -1.0}},
                           Relation::kLessEqual, 0.0);
        } else if (l < j || !upper) {
          lp.AddConstraint(Sym("e", j, l),
                           {{alpha[l], 1.0}, {d[j], -1.0}, {x[j][l], -1.0}},
                           Relation::kLessEqual, 0.0);
        }
      }
    }
    for (int l = 1; l <= n; ++l) {
      std::vector<Term> row;
      for (int j = 1; j <= n; ++j) row.push_back({x[j][l], 1.0});
      row.push_back({f, -1.0});
      lp.AddConstraint(Sym("h", l), row, Relation::kLessEqual, 0.0);
    }
    for (int j = 1; j <= n; ++j) {
      for (int l = j + 1; l <= n; ++l) {
        s.sites.push_back({j, l, alpha[l], r[j][l], d[l], d[j]});
      }
    }
  }
  return s;
}

lp::Constraint MakeCutRow(const CutSite& site, int index,
                          const Coefficients& coefs) {
  lp::Constraint row;
  row.name = Sym("c", site.j, site.l, index);
  row.terms = {{site.a, 1.0},
               {site.b, -coefs.b},
               {site.c, -coefs.c},
               {site.d, -coefs.d}};
  row.relation = Relation::kLessEqual;
  row.rhs = 0.0;
  return row;
}

}  // namespace internal

namespace {

LinearProgram BuildConic(int n, bool upper) {
  if (n < 1) throw DomainError("program size must be at least 1");
  LinearProgram lp(lp::Sense::kMinimize);
  const int gamma = lp.AddVariable("gamma", "gamma");
  lp.SetObjective(gamma, 1.0);
  std::vector<std::vector<int>> phi(n + 1, std::vector<int>(n + 1, -1));
  std::vector<std::vector<int>> theta(n + 1, std::vector<int>(n + 1, -1));
  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) phi[j][l] = lp.AddVariable(Sym("phi", j, l), "phi");
  }
  for (int j = 1; j <= n; ++j) {
    for (int l = j; l <= n; ++l) {
      theta[j][l] = lp.AddVariable(Sym("theta", j, l), "theta");
    }
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<Term> row;
    for (int l = 1; l <= n; ++l) {
      row.push_back({phi[j][l], 1.0});
      row.push_back({phi[l][j], -3.0});
    }
    for (int l = upper ? j + 1 : j; l <= n; ++l) {
      const double w = upper ? l - j - 0.5 : l - j + 1.0;
      row.push_back({theta[j][l], w});
    }
    lp.AddConstraint(Sym("alpha", j), row, Relation::kGreaterEqual, 1.0);
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<Term> row = {{gamma, 1.0}};
    for (int l = 1; l <= n; ++l) {
      row.push_back({phi[j][l], -3.0});
      row.push_back({phi[l][j], -3.0});
    }
    for (int i = 1; i <= j; ++i) {
      for (int l = j; l <= n; ++l) row.push_back({theta[i][l], -1.0});
    }
    lp.AddConstraint(Sym("d", j), row, Relation::kGreaterEqual, 0.0);
  }
  std::vector<Term> row = {{gamma, 1.0}};
  for (int j = 1; j <= n; ++j) {
    for (int l = j; l <= n; ++l) row.push_back({theta[j][l], -1.0});
  }
  lp.AddConstraint("f", row, Relation::kGreaterEqual, 0.0);
  return lp;
}

LinearProgram BuildA1Min(int n, const std::vector<Coefficients>& coefs,
                         bool upper) {
  if (n < 1) throw DomainError("program size must be at least 1");
  const int m = static_cast<int>(coefs.size());
  LinearProgram lp(lp::Sense::kMinimize);
  const int gamma = lp.AddVariable("gamma", "gamma");
  lp.SetObjective(gamma, 1.0);
  std::vector<int> a(n + 1, -1), h(n + 1, -1);
  for (int j = 1; j < n; ++j) a[j] = lp.AddVariable(Sym("a", j), "a");
  // c[(j * (n + 1) + l) * m + i - 1]
  std::vector<int> c((n + 1) * (n + 1) * m, -1);
  auto cv = [&](int j, int l, int i) { return c[(j * (n + 1) + l) * m + i - 1]; };
  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) {
      for (int i = 1; i <= m; ++i) {
        c[(j * (n + 1) + l) * m + i - 1] = lp.AddVariable(Sym("c", j, l, i), "c");
      }
    }
  }
  std::vector<std::vector<int>> e(n + 1, std::vector<int>(n + 1, -1));
  for (int j = 1; j <= n; ++j) {
    for (int l = upper ? j + 1 : j; l <= n; ++l) {
      e[j][l] = lp.AddVariable(Sym("e", j, l), "e");
    }
  }
  for (int j = 1; j <= n; ++j) h[j] = lp.AddVariable(Sym("h", j), "h");

  for (int j = 1; j <= n; ++j) {
    std::vector<Term> row;
    if (a[j] >= 0) row.push_back({a[j], 1.0});
    if (j > 1 && a[j - 1] >= 0) row.push_back({a[j - 1], -1.0});
    for (int i = 1; i <= m; ++i) {
      for (int l = 1; l <= n; ++l) {
        row.push_back({cv(j, l, i), 1.0});
        row.push_back({cv(l, j, i), -coefs[i - 1].b});
      }
    }
    for (int l = j; l <= n; ++l) {
      if (e[j][l] >= 0) row.push_back({e[j][l], 1.0});
    }
    lp.AddConstraint(Sym("alpha", j), row, Relation::kGreaterEqual, 1.0);
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<Term> row = {{gamma, 1.0}};
    for (int i = 1; i <= m; ++i) {
      for (int l = 1; l <= n; ++l) {
        row.push_back({cv(j, l, i), -coefs[i - 1].c});
        row.push_back({cv(l, j, i), -coefs[i - 1].d});
      }
    }
    for (int l = 1; l <= j; ++l) {
      if (e[l][j] >= 0) row.push_back({e[l][j], -1.0});
    }
    lp.AddConstraint(Sym("d", j), row, Relation::kGreaterEqual, 0.0);
  }
  std::vector<Term> frow = {{gamma, 1.0}};
  for (int j = 1; j <= n; ++j) frow.push_back({h[j], -1.0});
  lp.AddConstraint("f", frow, Relation::kGreaterEqual, 0.0);
  for (int j = 1; j <= n; ++j) {
    for (int l = j; l <= n; ++l) {
      std::vector<Term> row = {{h[j], 1.0}};
      if (e[j][l] >= 0) row.push_back({e[j][l], -1.0});
      lp.AddConstraint(Sym("x", j, l), row, Relation::kGreaterEqual, 0.0);
    }
  }
  return lp;
}

LinearProgram BuildA2Min(int n, const std::vector<Coefficients>& coefs,
                         bool upper) {
  if (n < 1) throw DomainError("program size must be at least 1");
  const int m = static_cast<int>(coefs.size());
  LinearProgram lp(lp::Sense::kMinimize);
  const int gamma = lp.AddVariable("gamma", "gamma");
  lp.SetObjective(gamma, 1.0);
  std::vector<int> a(n + 1, -1), h(n + 1, -1);
  for (int l = 1; l < n; ++l) a[l] = lp.AddVariable(Sym("a", l), "a");
  std::vector<std::vector<int>> b(n + 1, std::vector<int>(n + 1, -1));
  for (int j = 1; j <= n; ++j) {
    for (int l = j + 1; l < n; ++l) b[j][l] = lp.AddVariable(Sym("b", j, l), "b");
  }
  std::vector<int> c((n + 1) * (n + 1) * m, -1);
  auto cv = [&](int j, int l, int i) { return c[(j * (n + 1) + l) * m + i - 1]; };
  for (int j = 1; j <= n; ++j) {
    for (int l = j + 1; l <= n; ++l) {
      for (int i = 1; i <= m; ++i) {
        c[(j * (n + 1) + l) * m + i - 1] = lp.AddVariable(Sym("c", j, l, i), "c");
      }
    }
  }
  std::vector<std::vector<int>> e(n + 1, std::vector<int>(n + 1, -1));
  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) {
      if (upper && j == l) continue;
      e[j][l] = lp.AddVariable(Sym("e", j, l), "e");
    }
  }
  for (int l = 1; l <= n; ++l) h[l] = lp.AddVariable(Sym("h", l), "h");

  for (int l = 1; l <= n; ++l) {
    std::vector<Term> row;
    if (a[l] >= 0) row.push_back({a[l], 1.0});
    if (l > 1 && a[l - 1] >= 0) row.push_back({a[l - 1], -1.0});
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j < l; ++j) row.push_back({cv(j, l, i), 1.0});
    }
    for (int j = l; j <= n; ++j) {
      if (e[j][l] >= 0) row.push_back({e[j][l], 1.0});
    }
    lp.AddConstraint(Sym("alpha", l), row, Relation::kGreaterEqual, 1.0);
  }
  for (int l = 1; l <= n; ++l) {
    std::vector<Term> row = {{gamma, 1.0}};
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j < l; ++j) row.push_back({cv(j, l, i), -coefs[i - 1].c});
      for (int j = l + 1; j <= n; ++j) {
        row.push_back({cv(l, j, i), -coefs[i - 1].d});
      }
    }
    for (int j = 1; j <= n; ++j) {
      if (e[l][j] >= 0) row.push_back({e[l][j], -1.0});
    }
    lp.AddConstraint(Sym("d", l), row, Relation::kGreaterEqual, 0.0);
  }
  std::vector<Term> frow = {{gamma, 1.0}};
  for (int l = 1; l <= n; ++l) frow.push_back({h[l], -1.0});
  lp.AddConstraint("f", frow, Relation::kGreaterEqual, 0.0);
  for (int j = 1; j <= n; ++j) {
    for (int l = j + 1; l <= n; ++l) {
      std::vector<Term> row;
      if (b[j][l - 1] >= 0) row.push_back({b[j][l - 1], 1.0});
      if (b[j][l] >= 0) row.push_back({b[j][l], -1.0});
      row.push_back({e[j][l], 1.0});
      for (int i = 1; i <= m; ++i) row.push_back({cv(j, l, i), -coefs[i - 1].b});
      lp.AddConstraint(Sym("r", j, l), row, Relation::kGreaterEqual, 0.0);
    }
  }
  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) {
      std::vector<Term> row = {{h[l], 1.0}};
      if (e[j][l] >= 0) row.push_back({e[j][l], -1.0});
      lp.AddConstraint(Sym("x", j, l), row, Relation::kGreaterEqual, 0.0);
    }
  }
  return lp;
}

void CheckCoefficients(const std::vector<Coefficients>& coefs) {
  if (coefs.empty()) throw DomainError("at least one coefficient triple needed");
  for (const auto& c : coefs) {
    if (!std::isfinite(c.b) || !std::isfinite(c.c) || !std::isfinite(c.d)) {
      throw DomainError("non-finite cut coefficient");
    }
  }
}

}  // namespace

LinearProgram BuildWithCoefficients(FamilyId id, int size,
                                    const std::vector<Coefficients>& coefs,
                                    std::optional<double> gamma_f) {
  CheckCoefficients(coefs);
  internal::Skeleton s = internal::MakeSkeleton(id, size, gamma_f);
  LinearProgram lp = std::move(s.base);
  for (const auto& site : s.sites) {
    for (int i = 1; i <= static_cast<int>(coefs.size()); ++i) {
      lp::Constraint row = internal::MakeCutRow(site, i, coefs[i - 1]);
      lp.AddConstraint(std::move(row.name), std::move(row.terms), row.relation,
                       row.rhs);
    }
  }
  return lp;
}

LinearProgram build(const ProgramFamily& family) {
  family.Validate();
  if (family.id == FamilyId::kA1UpperConic) {
    return BuildConic(family.size, /*upper=*/true);
  }
  if (IsMetricFamily(family.id)) {
    return BuildWithCoefficients(family.id, family.size, {{1.0, 1.0, 1.0}});
  }
  return BuildWithCoefficients(family.id, family.size,
                               CoefficientsOf(family.tuples), family.gamma_f);
}

LinearProgram BuildA1ConicDual(int k) { return BuildConic(k, false); }

LinearProgram BuildA1LowerDual(int k, const std::vector<Coefficients>& coefs) {
  CheckCoefficients(coefs);
  return BuildA1Min(k, coefs, false);
}

LinearProgram BuildA1UpperMin(int t, const std::vector<Coefficients>& coefs) {
  CheckCoefficients(coefs);
  return BuildA1Min(t, coefs, true);
}

LinearProgram BuildA2LowerDual(int k, const std::vector<Coefficients>& coefs) {
  CheckCoefficients(coefs);
  return BuildA2Min(k, coefs, false);
}

LinearProgram BuildA2UpperMin(int t, const std::vector<Coefficients>& coefs) {
  CheckCoefficients(coefs);
  return BuildA2Min(t, coefs, true);
}

}  // namespace frlp::programs
