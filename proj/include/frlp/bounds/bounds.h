#pragma once

namespace frlp::bounds {

// Bi-factor approximation guarantee: cost <= gamma_f * F* + gamma_c * C*.
struct BiFactor {
  double gamma_f = 1.0;
  double gamma_c = 1.0;

  // Throws DomainError unless both factors are finite and >= 1.
  void Validate() const;
};

struct Balanced {
  double delta = 1.0;   // scaling parameter of the greedy augmentation
  double factor = 1.0;  // gamma_f + ln(delta)
};

// Solves gamma_f + ln(delta) = 1 + (gamma_c - 1) / delta for delta >= 1.
// When gamma_c <= gamma_f the balance is already reached at delta = 1.
Balanced balance_bifactor(const BiFactor& bf);

// Bi-factor curve of the scaled LP-rounding algorithm under a tau-relaxed
// triangle inequality:
//   (gamma, max{1 + (3 tau - 1) e^-gamma,
//               ((2 tau - 1) e^-gamma + e^-1) / (1 - 1 / gamma)}).
// Throws DomainError for gamma <= 1 or tau < 1.
BiFactor cs_bifactor(double gamma, double tau);

struct FixedPoint {
  double alpha = 0.0;   // solves gamma = 1 + (3 tau - 1) e^-gamma
  double gamma0 = 0.0;  // where the two branches of cs_bifactor cross
};

FixedPoint optimal_alpha(double tau);

// 1 + (3 tau - 1) e^-gamma_f: no gamma_c below this is achievable unless
// NP is in DTIME(n^O(log log n)).
double hardness_curve(double gamma_f, double tau);

}  // namespace frlp::bounds
