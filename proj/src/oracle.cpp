#include "survsched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "survsched/errors.hpp"

namespace survsched {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const ScheduleInstance& inst, std::int64_t budget)
      : inst_(inst),
        sc_(inst.scenario),
        budget_(budget),
        k_count_(inst.num_cameras()),
        n_count_(inst.num_objects()),
        m_count_(inst.sub_bands()) {
    order_.resize(k_count_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return sc_.qualities[a] > sc_.qualities[b];
    });
    min_r_.assign(k_count_, ChannelState::kNoFit);
    for (int k = 0; k < k_count_; ++k) {
      for (int m = 0; m < m_count_; ++m) min_r_[k] = std::min(min_r_[k], inst.channel.rb(m, k));
    }
    // Cameras fitting no sub-band at all can never be scheduled.
    possible_.assign(n_count_, 0);
    for (int k = 0; k < k_count_; ++k) {
      if (min_r_[k] > inst.spectrum.rbs_per_subband) continue;
      for (int n = 0; n < n_count_; ++n) possible_[n] += sc_.covers(k, n) ? 1 : 0;
    }
    covered_.assign(n_count_, 0);
    remaining_.assign(m_count_, inst.spectrum.rbs_per_subband);
    choice_.assign(k_count_, -1);
  }

  ExactSolution run() {
    for (int n = 0; n < n_count_; ++n) {
      if (possible_[n] == 0) {
        throw Infeasible("exact solver: object " + std::to_string(n + 1) +
                         " has no camera that fits any sub-band");
      }
    }
    exhausted_ = false;
    search(0, 0.0);
    if (!best_choice_) {
      if (exhausted_) {
        throw SearchBudgetExhausted("exact solver: node budget spent before any feasible point");
      }
      throw Infeasible("exact solver: no assignment satisfies coverage and capacity");
    }
    ExactSolution out;
    out.allocation = AllocationMap::empty(k_count_, inst_.spectrum);
    for (int k : order_) {  // branch order doubles as allocation order
      const int m = (*best_choice_)[k];
      if (m >= 0) out.allocation.place_camera(k, m, inst_.channel.rb(m, k));
    }
    out.z_star = objective_value(out.allocation, sc_);
    out.proven_optimal = !exhausted_;
    out.nodes_explored = nodes_;
    return out;
  }

 private:
  // Smaller of the total quality of undecided cameras that still fit
  // somewhere and a fractional knapsack over the total remaining RBs using
  // each camera's cheapest requirement.
  double upper_bound(int depth) const {
    double total = 0.0;
    int capacity = std::accumulate(remaining_.begin(), remaining_.end(), 0);
    const int widest = *std::max_element(remaining_.begin(), remaining_.end());
    items_.clear();
    for (int i = depth; i < k_count_; ++i) {
      const int k = order_[i];
      if (min_r_[k] > widest || sc_.qualities[k] <= 0.0) continue;
      total += sc_.qualities[k];
      items_.push_back({sc_.qualities[k], min_r_[k]});
    }
    std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) {
      return a.first * b.second > b.first * a.second;
    });
    double frac = 0.0;
    for (const auto& [q, r] : items_) {
      if (capacity <= 0) break;
      if (r <= capacity) {
        frac += q;
        capacity -= r;
      } else {
        frac += q * static_cast<double>(capacity) / r;
        capacity = 0;
      }
    }
    return std::min(total, frac);
  }

  bool all_covered() const {
    return std::all_of(covered_.begin(), covered_.end(), [](int c) { return c > 0; });
  }

  void search(int depth, double z) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (best_choice_ && z + upper_bound(depth) <= best_z_ + kEps) return;
    if (depth == k_count_) {
      if (all_covered() && (!best_choice_ || z > best_z_ + kEps)) {
        best_z_ = z;
        best_choice_ = choice_;
      }
      return;
    }
    const int k = order_[depth];
    const double q = sc_.qualities[k];
    for (int m = 0; m < m_count_; ++m) {
      const int r = inst_.channel.rb(m, k);
      if (r > remaining_[m]) continue;
      remaining_[m] -= r;
      choice_[k] = m;
      add_coverage(k, +1);
      search(depth + 1, z + q);
      add_coverage(k, -1);
      choice_[k] = -1;
      remaining_[m] += r;
      if (exhausted_) return;
    }
    // Leave k unscheduled unless that strands an uncovered object.
    if (!reject_strands_object(k)) {
      search(depth + 1, z);
    }
    restore_possible(k);
  }

  void add_coverage(int k, int delta) {
    for (int n = 0; n < n_count_; ++n) {
      if (sc_.covers(k, n)) covered_[n] += delta;
    }
  }

  // Marks k rejected; true when some object loses its last possible camera
  // while still uncovered. restore_possible undoes the marking.
  bool reject_strands_object(int k) {
    if (min_r_[k] > inst_.spectrum.rbs_per_subband) return false;  // never counted
    bool strands = false;
    for (int n = 0; n < n_count_; ++n) {
      if (!sc_.covers(k, n)) continue;
      --possible_[n];
      if (possible_[n] == 0 && covered_[n] == 0) strands = true;
    }
    return strands;
  }

  void restore_possible(int k) {
    if (min_r_[k] > inst_.spectrum.rbs_per_subband) return;
    for (int n = 0; n < n_count_; ++n) {
      if (sc_.covers(k, n)) ++possible_[n];
    }
  }

  static constexpr double kEps = 1e-9;

  const ScheduleInstance& inst_;
  const Scenario& sc_;
  const std::int64_t budget_;
  const int k_count_;
  const int n_count_;
  const int m_count_;
  std::vector<int> order_;
  std::vector<int> min_r_;
  std::vector<int> possible_;  // undecided or scheduled cameras covering n
  std::vector<int> covered_;   // scheduled cameras covering n
  std::vector<int> remaining_;
  std::vector<int> choice_;
  mutable std::vector<std::pair<double, int>> items_;
  std::optional<std::vector<int>> best_choice_;
  double best_z_ = -std::numeric_limits<double>::infinity();
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ExactSolution solve_exact(const ScheduleInstance& inst, std::int64_t node_budget) {
  inst.validate();
  if (node_budget < 1) throw InvalidArgument("solve_exact: node budget must be positive");
  return BranchAndBound(inst, node_budget).run();
}

}  // namespace survsched
