#pragma once

#include <cstdint>
#include <vector>

#include "frlp/facloc/instance.h"

namespace frlp::facloc {

constexpr int kDefaultLpCells = 1500;

// Optimal solution of the natural LP relaxation
//   min sum_i f_i y_i + sum_ij c_ij x_ij
//   s.t. sum_i x_ij = 1, x_ij <= y_i, x, y >= 0,
// with y_i replaced by max_j x_ij.
struct FractionalSolution {
  std::vector<double> y;               // per facility
  std::vector<std::vector<double>> x;  // facility x city
  double objective = 0.0;
  double facility_cost = 0.0;    // sum_i f_i y_i
  double connection_cost = 0.0;  // sum_ij c_ij x_ij
};

// Throws SizeError when m * n exceeds `max_cells`.
FractionalSolution solve_lp_relaxation(const Instance& inst,
                                       int max_cells = kDefaultLpCells);

// Piece [lo, hi) of the scaled opening interval [0, gamma y*_i] of a
// facility. After splitting every piece is either wholly used or wholly
// unused by each city, and hi - lo <= 1.
struct FacilityCopy {
  int facility = 0;
  double lo = 0.0;
  double hi = 0.0;
  double ybar() const { return hi - lo; }
};

struct CityProfile {
  std::vector<int> close;    // copy indices, C_j
  std::vector<int> distant;  // copy indices, D_j
  double djf = 0.0;          // average distance to C_j and D_j
  double d_close = 0.0;      // d^(c)
  double d_distant = 0.0;    // d^(d); equals djf when D_j is empty
  double d_max = 0.0;        // max cost over C_j
  double rho = 0.0;          // (djf - d^(c)) / djf, 0 when djf = 0
};

// Deterministic part of the rounding algorithm CS(gamma).
struct CsPlan {
  Instance inst;
  double gamma = 1.0;
  FractionalSolution lp;
  std::vector<double> ybar;               // gamma y*_i per facility
  std::vector<std::vector<double>> xbar;  // close share per (facility, city)
  std::vector<FacilityCopy> copies;
  std::vector<CityProfile> cities;
  std::vector<int> centers;      // cluster centers in selection order
  std::vector<int> center_of;    // center that removed each city
  std::vector<int> unclustered;  // copies outside every center's C_j
  double expected_facility_cost = 0.0;  // gamma sum_i y*_i f_i
};

// Throws DomainError for gamma < 1 and SizeError as solve_lp_relaxation.
CsPlan PrepareCs(const Instance& inst, double gamma,
                 int max_cells = kDefaultLpCells);

struct CsDraw {
  Solution solution;
  std::vector<bool> copy_open;  // indexed like CsPlan::copies
  // sum of f_i over open copies; its expectation is expected_facility_cost.
  double split_facility_cost = 0.0;
};

// Each cluster center opens one copy of its C_j with probability
// proportional to ybar; every unclustered copy opens independently with
// probability ybar. Cities connect to their cheapest open facility.
CsDraw RoundCs(const CsPlan& plan, std::uint64_t seed);

Solution run_cs(const Instance& inst, double gamma, std::uint64_t seed);

// d(j, A): ybar-weighted average of c_ij over the copies in A.
double AverageDistance(const CsPlan& plan, int j, const std::vector<int>& copies);

// Sample mean with its standard error.
struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  int count = 0;
};

// Monte-Carlo checks of CS(gamma) over `trials` draws seeded by
// TrialSeed(seed, t). Each inequality is accepted when the sample mean is
// within three standard errors of its bound.
struct CsMonteCarlo {
  int trials = 0;
  // Facility cost of the split instance against gamma sum_i y*_i f_i.
  MeanEstimate facility;
  double expected_facility_cost = 0.0;
  bool facility_ok = false;
  MeanEstimate total;
  // E[min over open copies of A of c_ij | some copy of A open] <= d(j, A)
  // for A = C_j and A = D_j.
  int nearest_checked = 0;
  int nearest_failed = 0;
  // For a city j with distant facilities and its cluster center j':
  // E[c_ij | the copy opened in C_j' lies outside F_j]
  //   <= 3 (gamma djf + (3 - gamma) d^(d)_j).
  int center_checked = 0;
  int center_failed = 0;

  bool ok() const {
    return facility_ok && nearest_failed == 0 && center_failed == 0;
  }
};

CsMonteCarlo monte_carlo_cs(const CsPlan& plan, int trials, std::uint64_t seed);

}  // namespace frlp::facloc
