#include "frlp/bounds/bounds.h"

#include <cmath>
#include <functional>

#include "frlp/error.h"

namespace frlp::bounds {

namespace {

constexpr double kWidth = 1e-12;

// Bracketed bisection on an increasing function with f(lo) < 0 < f(hi),
// followed by two Newton steps that are kept inside the final bracket.
double IncreasingRoot(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo,
                      double hi) {
  while (hi - lo > kWidth * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    const double slope = df(x);
    if (!(slope > 0.0)) break;
    const double next = x - f(x) / slope;
    if (next < lo || next > hi) break;
    x = next;
  }
  return x;
}

void CheckTau(double tau) {
  if (!std::isfinite(tau) || tau < 1.0) {
    throw DomainError("tau must be finite and >= 1");
  }
}

double FirstBranch(double gamma, double tau) {
  return 1.0 + (3.0 * tau - 1.0) * std::exp(-gamma);
}

double SecondBranch(double gamma, double tau) {
  return ((2.0 * tau - 1.0) * std::exp(-gamma) + std::exp(-1.0)) /
         (1.0 - 1.0 / gamma);
}

}  // namespace

void BiFactor::Validate() const {
  if (!std::isfinite(gamma_f) || !std::isfinite(gamma_c) || gamma_f < 1.0 ||
      gamma_c < 1.0) {
    throw DomainError("bi-factor entries must be finite and >= 1");
  }
}

Balanced balance_bifactor(const BiFactor& bf) {
  bf.Validate();
  const double gf = bf.gamma_f, gc = bf.gamma_c;
  auto residual = [gf, gc](double delta) {
    return gf + std::log(delta) - 1.0 - (gc - 1.0) / delta;
  };
  auto slope = [gc](double delta) {
    return 1.0 / delta + (gc - 1.0) / (delta * delta);
  };
  if (residual(1.0) >= 0.0) return {1.0, gf};
  double hi = 2.0;
  while (residual(hi) < 0.0) hi *= 2.0;
  const double delta = IncreasingRoot(residual, slope, 1.0, hi);
  return {delta, gf + std::log(delta)};
}

BiFactor cs_bifactor(double gamma, double tau) {
  CheckTau(tau);
  if (!std::isfinite(gamma) || gamma <= 1.0) {
    throw DomainError("cs_bifactor needs a finite gamma > 1");
  }
  return {gamma, std::max(FirstBranch(gamma, tau), SecondBranch(gamma, tau))};
}

FixedPoint optimal_alpha(double tau) {
  CheckTau(tau);
  const double c = 3.0 * tau - 1.0;
  FixedPoint out;
  out.alpha = IncreasingRoot(
      [c](double g) { return g - 1.0 - c * std::exp(-g); },
      [c](double g) { return 1.0 + c * std::exp(-g); }, 1.0, 1.0 + c);
  // The first branch minus the second rises from -inf at gamma = 1.
  auto diff = [tau](double g) {
    return FirstBranch(g, tau) - SecondBranch(g, tau);
  };
  auto diff_slope = [tau](double g) {
    const double e = std::exp(-g);
    const double u = (2.0 * tau - 1.0) * e + std::exp(-1.0);
    const double v = 1.0 - 1.0 / g;
    const double du = -(2.0 * tau - 1.0) * e;
    const double dv = 1.0 / (g * g);
    return -(3.0 * tau - 1.0) * e - (du * v - u * dv) / (v * v);
  };
  out.gamma0 = IncreasingRoot(diff, diff_slope, 1.0 + 1e-9, 10.0);
  return out;
}

double hardness_curve(double gamma_f, double tau) {
  CheckTau(tau);
  if (!std::isfinite(gamma_f) || gamma_f < 0.0) {
    throw DomainError("gamma_f must be finite and >= 0");
  }
  return FirstBranch(gamma_f, tau);
}

}  // namespace frlp::bounds
