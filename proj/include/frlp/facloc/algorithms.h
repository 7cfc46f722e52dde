#pragma once

#include <vector>

#include "frlp/facloc/instance.h"

namespace frlp::facloc {

// One step of the continuous budget-raising process of A1 / A2.
struct Event {
  enum class Kind { kOpen, kConnect, kSwitch };
  Kind kind = Kind::kOpen;
  double time = 0.0;
  int facility = -1;
  int city = -1;  // -1 for kOpen

  bool operator==(const Event&) const = default;
};

// Dual-fitting greedy algorithm: budgets of unconnected cities grow at unit
// rate; a facility opens when the budgets offered by unconnected cities pay
// for it. The returned solution keeps the algorithm's own assignment, so
// sum(alpha) equals the total cost. Simultaneous events are resolved as
// openings first, then smaller facility index, then smaller city index.
// If `trace` is non-null the event sequence is appended to it.
Solution run_a1(const Instance& inst, std::vector<Event>* trace = nullptr);

// As run_a1, but connected cities also offer max(c_{sigma(j) j} - c_ij, 0)
// to unopened facilities and switch when such a facility opens.
Solution run_a2(const Instance& inst, std::vector<Event>* trace = nullptr);

// While some unopened facility has positive gain, opens the one with the
// largest gain / cost ratio (f_i = 0 counts as infinite) and reconnects every
// city to its cheapest open facility. Returns `sol` unchanged when no
// facility has positive gain.
Solution greedy_augment(const Instance& inst, const Solution& sol);

// Runs A2 with facility costs scaled by delta >= 1, then greedy_augment on
// the original costs. Throws DomainError for delta < 1.
Solution run_a3(const Instance& inst, double delta);

// Exhaustive optimum over every nonempty set of open facilities. Throws
// SizeError when there are more than 20 facilities.
Solution brute_force_opt(const Instance& inst);

}  // namespace frlp::facloc
