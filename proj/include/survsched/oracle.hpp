#pragma once

#include <cstdint>

#include "survsched/allocation.hpp"

namespace survsched {

struct ExactSolution {
  double z_star = 0.0;
  AllocationMap allocation;  // x_star with a left-packed physical layout
  bool proven_optimal = false;
  std::int64_t nodes_explored = 0;
};

inline constexpr std::int64_t kDefaultNodeBudget = 10'000'000;

// Branch-and-bound over per-camera choices (a sub-band, or unscheduled).
// Cameras are branched in descending Q_k order, sub-bands in ascending index
// order, the unscheduled branch last. Prunes on capacity, on coverage
// reachability, and on an upper bound that is the smaller of the undecided
// cameras' total quality and a fractional-knapsack bound over the remaining
// RBs.
//
// Throws Infeasible when the search completes without a feasible point, and
// SearchBudgetExhausted when the budget runs out before one is found. A
// budget-limited result carries proven_optimal = false.
ExactSolution solve_exact(const ScheduleInstance& inst,
                          std::int64_t node_budget = kDefaultNodeBudget);

}  // namespace survsched
