#include "frlp/programs/certificates.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "frlp/error.h"

namespace frlp::programs {

namespace {

using lp::ValueMap;

std::vector<Coefficients> CoefficientsFor(const ProgramFamily& family) {
  if (IsMetricFamily(family.id)) return {{1.0, 1.0, 1.0}};
  return CoefficientsOf(family.tuples);
}

void RequireUpper(const ProgramFamily& upper) {
  upper.Validate();
  if (!IsUpperFamily(upper.id) || upper.id == FamilyId::kA2BifactorUpper) {
    throw DomainError(std::string("not an upper program family: ") +
                      ToString(upper.id));
  }
}

int Block(int n, int p) { return (n + p - 1) / p; }

std::string Describe(const std::vector<lp::Violation>& v) {
  std::string out;
  for (size_t i = 0; i < v.size() && i < 5; ++i) {
    if (!out.empty()) out += ", ";
    out += v[i].name + " by " + std::to_string(v[i].amount());
  }
  if (v.size() > 5) out += ", ...";
  return out;
}

// Reads primed values; indices outside the defined range read as 0.
class Primed {
 public:
  explicit Primed(const ValueMap& values) : values_(values) {}

  double operator()(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? 0.0 : it->second;
  }

 private:
  const ValueMap& values_;
};

double InterpolateA(const Primed& v, int j, int p, int t) {
  const int jh = Block(j, p);
  const double cur = jh < t ? v(Sym("a", jh)) : 0.0;
  const double prev = jh > 1 ? v(Sym("a", jh - 1)) : 0.0;
  return p * cur - (p * jh - j) * (cur - prev);
}

ValueMap ExpandA1(const Primed& v, int t, int m, int p) {
  const int k = p * t;
  ValueMap out;
  out["gamma"] = v("gamma");
  for (int j = 1; j < k; ++j) out[Sym("a", j)] = InterpolateA(v, j, p, t);
  for (int j = 1; j <= k; ++j) {
    const int jh = Block(j, p);
    out[Sym("h", j)] = v(Sym("h", jh)) / p;
    for (int l = 1; l <= k; ++l) {
      const int lh = Block(l, p);
      for (int i = 1; i <= m; ++i) {
        out[Sym("c", j, l, i)] = v(Sym("c", jh, lh, i)) / p;
      }
      if (j <= l) out[Sym("e", j, l)] = jh < lh ? v(Sym("e", jh, lh)) / p : 0.0;
    }
  }
  return out;
}

ValueMap ExpandA2(const Primed& v, int t, int m, int p) {
  const int k = p * t;
  ValueMap out;
  out["gamma"] = v("gamma");
  for (int l = 1; l < k; ++l) out[Sym("a", l)] = InterpolateA(v, l, p, t);
  auto b_primed = [&](int j, int l) {
    return j < l && l < t ? v(Sym("b", j, l)) : 0.0;
  };
  for (int j = 1; j <= k; ++j) {
    const int jh = Block(j, p);
    for (int l = 1; l <= k; ++l) {
      const int lh = Block(l, p);
      if (j < l && l < k) {
        const double cur = b_primed(jh, lh);
        out[Sym("b", j, l)] =
            cur - static_cast<double>(p * lh - l) / p * (cur - b_primed(jh, lh - 1));
      }
      if (j < l) {
        for (int i = 1; i <= m; ++i) {
          out[Sym("c", j, l, i)] = jh < lh ? v(Sym("c", jh, lh, i)) / p : 0.0;
        }
      }
      out[Sym("e", j, l)] = jh != lh ? v(Sym("e", jh, lh)) / p : 0.0;
    }
    out[Sym("h", j)] = v(Sym("h", jh)) / p;
  }
  return out;
}

ValueMap ExpandConic(const Primed& v, int t, int p) {
  const int k = p * t;
  ValueMap out;
  out["gamma"] = v("gamma");
  for (int j = 1; j <= k; ++j) {
    for (int l = 1; l <= k; ++l) {
      const int jh = Block(j, p), lh = Block(l, p);
      out[Sym("phi", j, l)] = v(Sym("phi", jh, lh)) / p;
      if (j <= l) {
        out[Sym("theta", j, l)] =
            v(Sym("theta", jh, lh)) / (static_cast<double>(p) * p);
      }
    }
  }
  return out;
}

}  // namespace

lp::LinearProgram UpperMinForm(const ProgramFamily& upper) {
  RequireUpper(upper);
  if (upper.id == FamilyId::kA1UpperConic) return build(upper);
  const auto coefs = CoefficientsFor(upper);
  return IsA2Family(upper.id) ? BuildA2UpperMin(upper.size, coefs)
                              : BuildA1UpperMin(upper.size, coefs);
}

lp::LinearProgram ExpandedMinForm(const ProgramFamily& upper, int p) {
  RequireUpper(upper);
  if (p < 1) throw DomainError("replication factor must be at least 1");
  const int k = p * upper.size;
  if (upper.id == FamilyId::kA1UpperConic) return BuildA1ConicDual(k);
  const auto coefs = CoefficientsFor(upper);
  return IsA2Family(upper.id) ? BuildA2LowerDual(k, coefs)
                              : BuildA1LowerDual(k, coefs);
}

ValueMap expand_upfrp_solution(const ProgramFamily& upper,
                               const ValueMap& solution, int p, double tol) {
  if (p < 1) throw DomainError("replication factor must be at least 1");
  const auto violations = lp::check_point(UpperMinForm(upper), solution, tol);
  if (!violations.empty()) {
    throw InfeasibleInputError("upper solution is infeasible: " +
                               Describe(violations));
  }
  const Primed v(solution);
  if (upper.id == FamilyId::kA1UpperConic) return ExpandConic(v, upper.size, p);
  const int m = static_cast<int>(CoefficientsFor(upper).size());
  return IsA2Family(upper.id) ? ExpandA2(v, upper.size, m, p)
                              : ExpandA1(v, upper.size, m, p);
}

GapCertificate gap_certificate(const ProgramFamily& upper,
                               const ValueMap& upper_primal, double tol) {
  RequireUpper(upper);
  if (upper.id == FamilyId::kA1UpperConic) {
    throw DomainError("gap certificate needs a max-form upper program");
  }
  const lp::LinearProgram upper_lp = build(upper);
  const auto violations = lp::check_point(upper_lp, upper_primal, tol);
  if (!violations.empty()) {
    throw InfeasibleInputError("upper point is infeasible: " +
                               Describe(violations));
  }
  const int n = upper.size;
  GapCertificate cert;
  ValueMap repaired = upper_primal;
  double eps = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double gap = repaired.at(Sym("alpha", j)) - repaired.at(Sym("d", j));
    eps = std::max(eps, gap);
    cert.upper_value += repaired.at(Sym("alpha", j));
    repaired[Sym("x", j, j)] = std::max(0.0, gap);
  }
  repaired["f"] += eps;
  for (auto& [name, value] : repaired) value /= 1.0 + eps;

  ProgramFamily lower = upper;
  lower.id = Counterpart(upper.id);
  const auto broken = lp::check_point(build(lower), repaired, tol);
  if (!broken.empty()) {
    throw InfeasibleInputError("repaired point is infeasible for " +
                               std::string(ToString(lower.id)) + ": " +
                               Describe(broken));
  }
  cert.epsilon = eps;
  cert.certified_lower = cert.upper_value / (1.0 + eps);
  cert.repaired = std::move(repaired);
  return cert;
}

}  // namespace frlp::programs
