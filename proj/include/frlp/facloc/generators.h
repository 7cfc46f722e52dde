#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "frlp/facloc/instance.h"

namespace frlp::facloc {

// Facilities and cities are uniform points of [0,1]^dim, c is the squared
// Euclidean distance and f_i is uniform on [0,1). Throws DomainError on
// nonpositive sizes.
Instance gen_random_sq_euclidean(int n, int m, int dim, std::uint64_t seed);

// As above in the plane with c the Euclidean distance.
Instance gen_random_metric(int n, int m, std::uint64_t seed);

// One city per element of `elements` and one facility per set:
// c = 1 when the element belongs to the set and 9 otherwise, and every
// facility costs gamma * |elements| / k.
Instance gen_setcover_gadget(const std::vector<int>& elements,
                             const std::vector<std::vector<int>>& sets, int k,
                             double gamma);

struct SetCoverRound {
  int uncovered_before = 0;        // n_j
  std::vector<int> chosen;         // sets opened in this round
  int newly_covered = 0;
  double beta = 0.0;               // |chosen| / k
  double covered_fraction = 0.0;   // newly_covered / n_j
};

struct SetCoverRun {
  std::vector<SetCoverRound> rounds;
  std::vector<int> cover;  // union of the chosen sets, sorted
  bool complete = false;   // every element covered
};

using FacilitySolver = std::function<Solution(const Instance&)>;

// Covers elements 0..universe-1 by repeatedly building the gadget on the
// elements still uncovered and keeping the sets opened by `solver`. Stops
// when everything is covered, when a round covers nothing new, or after
// `max_rounds` rounds.
SetCoverRun setcover_loop(int universe, const std::vector<std::vector<int>>& sets,
                          int k, double gamma, const FacilitySolver& solver,
                          int max_rounds = 1000);

}  // namespace frlp::facloc

namespace frlp::facloc {

// Seed of Monte-Carlo trial `trial` derived from `base` through a seed
// sequence, so trials can run in any order.
std::uint64_t TrialSeed(std::uint64_t base, std::uint64_t trial);

}  // namespace frlp::facloc
