#pragma once

#include "survsched/allocation.hpp"

namespace survsched {

// Every overload taking `start` schedules on top of an existing allocation
// (e.g. one already holding background flows); objects covered by cameras in
// `start` count as covered.

// Quality-based coverage assurance: for each uncovered object in index order,
// serve the covering camera with the largest Q_k in the sub-band where it
// needs the fewest RBs. Falls back to the next-best covering camera when the
// chosen one fits nowhere. Throws Infeasible when no covering camera fits.
AllocationMap mqbs_coverage_phase(const ScheduleInstance& inst);
AllocationMap mqbs_coverage_phase(const ScheduleInstance& inst, AllocationMap start);

// Serves the remaining cameras in descending Q_k order wherever they still
// fit (minimum r_{m,k} sub-band); cameras that fit nowhere are skipped.
AllocationMap mqbs_improvement_phase(AllocationMap alloc, const ScheduleInstance& inst);

AllocationMap schedule_mqbs(const ScheduleInstance& inst);
AllocationMap schedule_mqbs(const ScheduleInstance& inst, AllocationMap start);

// SNR-greedy baseline, phase 1: while objects are uncovered, serve the
// unscheduled camera covering at least one of them with the smallest feasible
// r_{m,k}. Throws Infeasible when no such camera fits.
AllocationMap baseline_coverage_phase(const ScheduleInstance& inst);
AllocationMap baseline_coverage_phase(const ScheduleInstance& inst, AllocationMap start);

// Baseline phase 2: keep serving the unscheduled camera with the smallest
// feasible r_{m,k} until none fits.
AllocationMap baseline_fill_phase(AllocationMap alloc, const ScheduleInstance& inst);

AllocationMap schedule_baseline(const ScheduleInstance& inst);
AllocationMap schedule_baseline(const ScheduleInstance& inst, AllocationMap start);

// Sub-band with the smallest r_{m,k} that still fits R_m; lowest index on
// ties. nullopt when the camera fits nowhere.
std::optional<int> cheapest_feasible_subband(const AllocationMap& alloc,
                                             const ChannelState& channel, int k);

}  // namespace survsched
