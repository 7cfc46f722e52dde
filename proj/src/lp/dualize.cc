#include "frlp/lp/dualize.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string_view>
#include <vector>

namespace frlp::lp {

namespace {

std::string RoleOf(const std::string& name) {
  const auto pos = name.find_first_of("[:");
  return pos == std::string::npos ? name : name.substr(0, pos);
}

}  // namespace

LinearProgram dualize(const LinearProgram& lp) {
  lp.Validate();
  const bool primal_max = lp.sense() == Sense::kMaximize;
  LinearProgram dual(primal_max ? Sense::kMinimize : Sense::kMaximize);

  // Column-wise view of the primal rows, plus the upper-bound rows.
  const int n = lp.num_variables();
  std::vector<std::vector<Term>> columns(n);
  auto add_dual_var = [&](const std::string& name, const std::vector<Term>& row,
                          Relation relation, double rhs) {
    // Orient: a maximization wants <= rows, a minimization >= rows.
    const Relation wanted =
        primal_max ? Relation::kLessEqual : Relation::kGreaterEqual;
    double sign = 1.0;
    double lower = 0.0;
    if (relation == Relation::kEqual) {
      lower = -kInfinity;
    } else if (relation != wanted) {
      sign = -1.0;
    }
    const int y = dual.AddVariable(name, RoleOf(name), lower);
    dual.SetObjective(y, sign * rhs);
    for (const Term& t : row) columns[t.var].push_back({y, sign * t.coef});
  };
  for (const Constraint& row : lp.constraints()) {
    add_dual_var(row.name, row.terms, row.relation, row.rhs);
  }
  for (int j = 0; j < n; ++j) {
    const Variable& v = lp.variable(j);
    if (v.upper == kInfinity) continue;
    add_dual_var("ub:" + v.name, {{j, 1.0}}, Relation::kLessEqual, v.upper);
  }

  for (int j = 0; j < n; ++j) {
    const Variable& v = lp.variable(j);
    Relation relation = Relation::kEqual;
    if (v.lower == 0.0) {
      relation = primal_max ? Relation::kGreaterEqual : Relation::kLessEqual;
    }
    dual.AddConstraint(v.name, columns[j], relation, lp.objective()[j]);
  }
  return dual;
}

namespace {

struct CanonicalRow {
  Relation relation;
  double rhs;
  std::map<std::string, double> terms;
};

CanonicalRow Canonicalize(const LinearProgram& lp, const Constraint& row) {
  CanonicalRow out{row.relation, row.rhs, {}};
  for (const Term& t : row.terms) out.terms[lp.variable(t.var).name] = t.coef;
  double sign = 1.0;
  if (row.relation == Relation::kLessEqual) {
    sign = -1.0;
    out.relation = Relation::kGreaterEqual;
  } else if (row.relation == Relation::kEqual && !out.terms.empty() &&
             out.terms.begin()->second < 0.0) {
    sign = -1.0;
  }
  out.rhs *= sign;
  for (auto& [name, coef] : out.terms) coef *= sign;
  return out;
}

bool Close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string Num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::optional<std::string> CompareStructure(const LinearProgram& a,
                                            const LinearProgram& b,
                                            double tol) {
  if (a.sense() != b.sense()) return "objective senses differ";
  if (a.num_variables() != b.num_variables()) {
    return "variable counts differ: " + std::to_string(a.num_variables()) +
           " vs " + std::to_string(b.num_variables());
  }
  if (a.num_constraints() != b.num_constraints()) {
    return "constraint counts differ: " + std::to_string(a.num_constraints()) +
           " vs " + std::to_string(b.num_constraints());
  }
  for (int j = 0; j < a.num_variables(); ++j) {
    const Variable& va = a.variable(j);
    auto jb = b.FindVariable(va.name);
    if (!jb) return "variable '" + va.name + "' missing from second program";
    const Variable& vb = b.variable(*jb);
    if (va.lower != vb.lower || va.upper != vb.upper) {
      return "bounds of '" + va.name + "' differ";
    }
    if (!Close(a.objective()[j], b.objective()[*jb], tol)) {
      return "objective coefficient of '" + va.name + "' differs: " +
             Num(a.objective()[j]) + " vs " + Num(b.objective()[*jb]);
    }
  }
  for (const Constraint& ra : a.constraints()) {
    auto rb_index = b.FindConstraint(ra.name);
    if (!rb_index) return "row '" + ra.name + "' missing from second program";
    const CanonicalRow ca = Canonicalize(a, ra);
    const CanonicalRow cb = Canonicalize(b, b.constraint(*rb_index));
    if (ca.relation != cb.relation) {
      return "row '" + ra.name + "': relations differ";
    }
    if (!Close(ca.rhs, cb.rhs, tol)) {
      return "row '" + ra.name + "': rhs " + Num(ca.rhs) + " vs " +
             Num(cb.rhs);
    }
    for (const auto& [name, coef] : ca.terms) {
      auto it = cb.terms.find(name);
      const double other = it == cb.terms.end() ? 0.0 : it->second;
      if (!Close(coef, other, tol)) {
        return "row '" + ra.name + "', variable '" + name + "': " + Num(coef) +
               " vs " + Num(other);
      }
    }
    for (const auto& [name, coef] : cb.terms) {
      if (!ca.terms.contains(name)) {
        return "row '" + ra.name + "': second program has extra term '" +
               name + "' (" + Num(coef) + ")";
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string LpName(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch)) ||
        std::string_view("!\"#$%&()/,.;?@_`'{}|~").find(ch) !=
            std::string_view::npos) {
      out += ch;
    } else if (ch == '[') {
      out += '(';
    } else if (ch == ']') {
      out += ')';
    } else {
      out += '_';
    }
  }
  return out;
}

void WriteLinear(const LinearProgram& lp, const std::vector<Term>& terms,
                 std::ostream& out) {
  if (terms.empty()) {
    out << " 0 " << LpName(lp.variable(0).name);
    return;
  }
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << Num(std::abs(t.coef)) << ' '
        << LpName(lp.variable(t.var).name);
  }
}

}  // namespace

void WriteLpFormat(const LinearProgram& lp, std::ostream& out) {
  out << (lp.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  std::vector<Term> objective;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.objective()[j] != 0.0) objective.push_back({j, lp.objective()[j]});
  }
  out << " obj:";
  if (lp.num_variables() > 0) WriteLinear(lp, objective, out);
  out << "\nSubject To\n";
  for (const Constraint& row : lp.constraints()) {
    if (lp.num_variables() == 0) break;
    out << ' ' << LpName(row.name) << ':';
    WriteLinear(lp, row.terms, out);
    out << ' ' << ToString(row.relation) << ' ' << Num(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : lp.variables()) {
    const std::string name = LpName(v.name);
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << ' ' << name << " free\n";
    } else if (v.lower == -kInfinity) {
      out << " -inf <= " << name << " <= " << Num(v.upper) << '\n';
    } else if (v.upper != kInfinity) {
      out << " 0 <= " << name << " <= " << Num(v.upper) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace frlp::lp
