#include "frlp/cuts/sqrt_cuts.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "frlp/error.h"

namespace frlp::cuts {

CutTuple::CutTuple(double beta, double gamma, double delta)
    : beta_(beta), gamma_(gamma), delta_(delta) {
  for (double v : {beta, gamma, delta}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("cut tuple entries must be positive and finite");
    }
  }
}

bool CutTuple::NearlyEquals(const CutTuple& other, double rel_tol) const {
  auto close = [rel_tol](double x, double y) {
    return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
  };
  return close(beta_, other.beta_) && close(gamma_, other.gamma_) &&
         close(delta_, other.delta_);
}

std::string CutTuple::ToString() const {
  std::ostringstream os;
  os.precision(12);
  os << '(' << beta_ << ", " << gamma_ << ", " << delta_ << ')';
  return os.str();
}

namespace {

void CheckNonnegative(double a, double b, double c, double d) {
  if (a < 0.0 || b < 0.0 || c < 0.0 || d < 0.0 || std::isnan(a + b + c + d)) {
    throw DomainError("square-root constraint arguments must be nonnegative");
  }
}

bool IsZero(double v) { return v <= kZeroThreshold; }

// Cases of the separation argument, written for the zero patterns
// (none), (B), (B, C) and (B, C, D).
CutTuple SeparateCanonical(double gap, double b, double c, double d,
                           std::pair<double, double> xi) {
  const bool zb = IsZero(b), zc = IsZero(c), zd = IsZero(d);
  if (!zb && !zc && !zd) {
    return {std::sqrt(d / b), std::sqrt(b / c), std::sqrt(c / d)};
  }
  if (zb && !zc && !zd) {
    return {d / (xi.first * gap), xi.second * gap / c, std::sqrt(c / d)};
  }
  if (zb && zc && !zd) {
    return {d / (xi.first * gap), 1.0, xi.second * gap / d};
  }
  return kUnitTuple;
}

}  // namespace

bool sqrt_satisfied(double a, double b, double c, double d, double tol) {
  CheckNonnegative(a, b, c, d);
  return std::sqrt(a) <= std::sqrt(b) + std::sqrt(c) + std::sqrt(d) + tol;
}

double evaluate_cut(const CutTuple& t, double a, double b, double c,
                    double d) {
  return t.CoefB() * b + t.CoefC() * c + t.CoefD() * d - a;
}

std::optional<CutTuple> separate(double a, double b, double c, double d,
                                 std::pair<double, double> xi, double tol) {
  if (!(xi.first > 0.0) || !(xi.second > 0.0) ||
      !(xi.first + xi.second < 1.0)) {
    throw DomainError("separate: need xi1, xi2 > 0 with xi1 + xi2 < 1");
  }
  if (sqrt_satisfied(a, b, c, d, tol)) return std::nullopt;
  const double root_sum = std::sqrt(b) + std::sqrt(c) + std::sqrt(d);
  const double gap = a - root_sum * root_sum;

  // Rotate (B, C, D) until the zeros lead; the tuple rotates along with it.
  std::array<double, 3> v = {b, c, d};
  int shift = 0;
  auto leads_with_zeros = [](const std::array<double, 3>& w) {
    const bool z0 = IsZero(w[0]), z1 = IsZero(w[1]), z2 = IsZero(w[2]);
    return (z0 || !z1) && (z1 || !z2) && (z0 || !z2);
  };
  while (!leads_with_zeros(v)) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    ++shift;
  }
  CutTuple t = SeparateCanonical(gap, v[0], v[1], v[2], xi);
  for (int s = 0; s < shift; ++s) {
    // Undo one rotation (B, C, D) -> (C, D, B).
    t = CutTuple(t.delta(), t.beta(), t.gamma());
  }
  return t;
}

}  // namespace frlp::cuts
