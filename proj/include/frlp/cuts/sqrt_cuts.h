#pragma once

#include <optional>
#include <string>
#include <utility>

namespace frlp::cuts {

// Positive multipliers (beta, gamma, delta) linearizing
//   sqrt(A) <= sqrt(B) + sqrt(C) + sqrt(D)
// into
//   A <= (1 + beta + 1/gamma) B + (1 + gamma + 1/delta) C + (1 + delta + 1/beta) D.
class CutTuple {
 public:
  // Throws DomainError unless all three multipliers are positive and finite.
  CutTuple(double beta, double gamma, double delta);

  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double delta() const { return delta_; }

  double CoefB() const { return 1.0 + beta_ + 1.0 / gamma_; }
  double CoefC() const { return 1.0 + gamma_ + 1.0 / delta_; }
  double CoefD() const { return 1.0 + delta_ + 1.0 / beta_; }

  // Componentwise relative distance below `rel_tol`.
  bool NearlyEquals(const CutTuple& other, double rel_tol) const;

  std::string ToString() const;

  friend bool operator==(const CutTuple&, const CutTuple&) = default;

 private:
  double beta_;
  double gamma_;
  double delta_;
};

inline const CutTuple kUnitTuple{1.0, 1.0, 1.0};

// Values at or below this are treated as zero when choosing the separation
// case.
inline constexpr double kZeroThreshold = 1e-12;
inline constexpr double kSatisfiedTolerance = 1e-9;

// True iff sqrt(A) <= sqrt(B) + sqrt(C) + sqrt(D) + tol. Throws DomainError on
// a negative input.
bool sqrt_satisfied(double a, double b, double c, double d,
                    double tol = kSatisfiedTolerance);

// (CoefB * B + CoefC * C + CoefD * D) - A; nonnegative when the cut holds.
double evaluate_cut(const CutTuple& t, double a, double b, double c, double d);

// Returns a tuple whose cut is strictly violated at (A, B, C, D), or nullopt
// when the square-root inequality holds within `tol`. `xi` must be positive
// with xi.first + xi.second < 1 (DomainError otherwise).
std::optional<CutTuple> separate(double a, double b, double c, double d,
                                 std::pair<double, double> xi = {0.25, 0.25},
                                 double tol = kSatisfiedTolerance);

}  // namespace frlp::cuts
