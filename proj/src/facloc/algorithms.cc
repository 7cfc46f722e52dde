#include "frlp/facloc/algorithms.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "frlp/error.h"

namespace frlp::facloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Eps(double x) { return 1e-12 * (1.0 + std::abs(x)); }

class DualAscent {
 public:
  DualAscent(const Instance& inst, bool offers, std::vector<Event>* trace)
      : inst_(inst),
        offers_(offers),
        trace_(trace),
        m_(inst.num_facilities()),
        n_(inst.num_cities()),
        is_open_(m_, false),
        sigma_(n_, -1),
        alpha_(n_, 0.0) {}

  Solution Run() {
    int unconnected = n_;
    while (unconnected > 0) {
      double open_time = kInf;
      int open_facility = -1;
      for (int i = 0; i < m_; ++i) {
        if (is_open_[i]) continue;
        const double root = OpeningTime(i);
        if (open_facility < 0 || root < open_time - Eps(open_time)) {
          open_time = root;
          open_facility = i;
        }
      }
      double connect_time = kInf;
      int ci = -1, cj = -1;
      for (int j = 0; j < n_; ++j) {
        if (sigma_[j] >= 0) continue;
        for (int i = 0; i < m_; ++i) {
          if (is_open_[i] &&
              (ci < 0 || inst_.c(i, j) < connect_time - Eps(connect_time))) {
            connect_time = inst_.c(i, j);
            ci = i;
            cj = j;
          }
        }
      }
      if (open_facility >= 0 && open_time <= connect_time + Eps(connect_time)) {
        t_ = std::max(t_, open_time);
        unconnected -= Open(open_facility);
      } else {
        t_ = std::max(t_, connect_time);
        Connect(ci, cj);
        --unconnected;
      }
    }
    Solution sol;
    for (int i = 0; i < m_; ++i) {
      if (is_open_[i]) sol.open.push_back(i);
    }
    sol.assignment = sigma_;
    sol.alpha = alpha_;
    sol.switches = switches_;
    Recost(inst_, sol);
    return sol;
  }

 private:
  double Offer(int i) const {
    double k = 0.0;
    if (!offers_) return k;
    for (int j = 0; j < n_; ++j) {
      if (sigma_[j] >= 0) {
        k += std::max(inst_.c(sigma_[j], j) - inst_.c(i, j), 0.0);
      }
    }
    return k;
  }

  // Smallest time >= t_ at which facility i is paid for.
  double OpeningTime(int i) const {
    const double f = inst_.facility_costs[i];
    double paid = Offer(i);
    int slope = 0;
    std::vector<double> ahead;
    for (int j = 0; j < n_; ++j) {
      if (sigma_[j] >= 0) continue;
      const double c = inst_.c(i, j);
      if (c <= t_) {
        paid += t_ - c;
        ++slope;
      } else {
        ahead.push_back(c);
      }
    }
    if (paid >= f) return t_;
    std::sort(ahead.begin(), ahead.end());
    double t = t_;
    for (double c : ahead) {
      if (slope > 0 && t + (f - paid) / slope <= c) break;
      paid += slope * (c - t);
      t = c;
      ++slope;
    }
    if (slope == 0) return kInf;
    return t + (f - paid) / slope;
  }

  int Open(int i) {
    is_open_[i] = true;
    Record(Event::Kind::kOpen, i, -1);
    int connected = 0;
    for (int j = 0; j < n_; ++j) {
      const double c = inst_.c(i, j);
      if (sigma_[j] < 0) {
        if (c <= t_ + Eps(t_)) {
          Connect(i, j);
          ++connected;
        }
      } else if (offers_ && inst_.c(sigma_[j], j) > c) {
        sigma_[j] = i;
        ++switches_;
        Record(Event::Kind::kSwitch, i, j);
      }
    }
    return connected;
  }

  void Connect(int i, int j) {
    sigma_[j] = i;
    alpha_[j] = t_;
    Record(Event::Kind::kConnect, i, j);
  }

  void Record(Event::Kind kind, int i, int j) {
    if (trace_ != nullptr) trace_->push_back({kind, t_, i, j});
  }

  const Instance& inst_;
  const bool offers_;
  std::vector<Event>* trace_;
  const int m_;
  const int n_;
  double t_ = 0.0;
  int switches_ = 0;
  std::vector<bool> is_open_;
  std::vector<int> sigma_;
  std::vector<double> alpha_;
};

}  // namespace

Solution run_a1(const Instance& inst, std::vector<Event>* trace) {
  inst.Validate();
  return DualAscent(inst, /*offers=*/false, trace).Run();
}

Solution run_a2(const Instance& inst, std::vector<Event>* trace) {
  inst.Validate();
  return DualAscent(inst, /*offers=*/true, trace).Run();
}

Solution greedy_augment(const Instance& inst, const Solution& sol) {
  inst.Validate();
  CheckFeasible(inst, sol);
  Solution cur = sol;
  const int m = inst.num_facilities();
  const int n = inst.num_cities();
  while (true) {
    std::vector<bool> is_open(m, false);
    for (int i : cur.open) is_open[i] = true;
    const double threshold = Eps(cur.total);
    int best = -1;
    double best_ratio = -kInf;
    for (int i = 0; i < m; ++i) {
      if (is_open[i]) continue;
      double gain = -inst.facility_costs[i];
      for (int j = 0; j < n; ++j) {
        gain += std::max(inst.c(cur.assignment[j], j) - inst.c(i, j), 0.0);
      }
      if (gain <= threshold) continue;
      const double f = inst.facility_costs[i];
      const double ratio = f > 0.0 ? gain / f : kInf;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    if (best < 0) break;
    std::vector<int> open = cur.open;
    open.push_back(best);
    cur = Evaluate(inst, std::move(open));
  }
  return cur;
}

Solution run_a3(const Instance& inst, double delta) {
  if (!(delta >= 1.0) || !std::isfinite(delta)) {
    throw DomainError("delta must be finite and >= 1");
  }
  inst.Validate();
  Instance scaled = inst;
  for (double& f : scaled.facility_costs) f *= delta;
  Solution phase1 = run_a2(scaled);
  phase1.alpha.clear();
  phase1.switches = 0;
  Recost(inst, phase1);
  return greedy_augment(inst, phase1);
}

Solution brute_force_opt(const Instance& inst) {
  inst.Validate();
  const int m = inst.num_facilities();
  const int n = inst.num_cities();
  if (m > 20) throw SizeError("brute_force_opt supports at most 20 facilities");
  double best = kInf;
  std::uint32_t best_mask = 0;
  std::vector<double> nearest(n);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    double cost = 0.0;
    std::fill(nearest.begin(), nearest.end(), kInf);
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      cost += inst.facility_costs[i];
      for (int j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], inst.c(i, j));
    }
    for (double c : nearest) cost += c;
    if (cost < best) {
      best = cost;
      best_mask = mask;
    }
  }
  std::vector<int> open;
  for (int i = 0; i < m; ++i) {
    if (best_mask >> i & 1u) open.push_back(i);
  }
  return Evaluate(inst, std::move(open));
}

}  // namespace frlp::facloc
