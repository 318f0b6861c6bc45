#include "survsched/sched.hpp"

#include <algorithm>
#include <numeric>

#include "survsched/errors.hpp"

namespace survsched {

namespace {

std::vector<bool> covered_by(const AllocationMap& alloc, const Scenario& scenario) {
  std::vector<bool> covered(scenario.num_objects(), false);
  for (int k : alloc.scheduled_cameras()) {
    for (int n = 0; n < scenario.num_objects(); ++n) {
      if (scenario.covers(k, n)) covered[n] = true;
    }
  }
  return covered;
}

void mark_covered(std::vector<bool>& covered, const Scenario& scenario, int k) {
  for (int n = 0; n < scenario.num_objects(); ++n) {
    if (scenario.covers(k, n)) covered[n] = true;
  }
}

void check_start(const ScheduleInstance& inst, const AllocationMap& start) {
  inst.validate();
  if (start.sub_bands != inst.spectrum.sub_bands ||
      start.rbs_per_subband != inst.spectrum.rbs_per_subband ||
      start.num_cameras() != inst.num_cameras()) {
    throw InvalidArgument("starting allocation does not match the instance");
  }
}

// Cameras ordered by descending Q_k; stable, so ties keep index order.
std::vector<int> by_quality_desc(const Scenario& scenario, std::vector<int> cameras) {
  std::stable_sort(cameras.begin(), cameras.end(), [&](int a, int b) {
    return scenario.qualities[a] > scenario.qualities[b];
  });
  return cameras;
}

}  // namespace

std::optional<int> cheapest_feasible_subband(const AllocationMap& alloc,
                                             const ChannelState& channel, int k) {
  std::optional<int> best;
  int best_r = ChannelState::kNoFit;
  for (int m = 0; m < alloc.sub_bands; ++m) {
    if (!channel.can_use(m, k)) continue;
    const int r = channel.rb(m, k);
    if (r < best_r && r <= alloc.remaining[m]) {
      best_r = r;
      best = m;
    }
  }
  return best;
}

AllocationMap mqbs_coverage_phase(const ScheduleInstance& inst) {
  return mqbs_coverage_phase(inst, AllocationMap::empty(inst.num_cameras(), inst.spectrum));
}

AllocationMap mqbs_coverage_phase(const ScheduleInstance& inst, AllocationMap alloc) {
  check_start(inst, alloc);
  const Scenario& sc = inst.scenario;
  std::vector<bool> covered = covered_by(alloc, sc);
  for (int n = 0; n < sc.num_objects(); ++n) {
    if (covered[n]) continue;
    std::vector<int> covering;
    for (int k = 0; k < sc.num_cameras(); ++k) {
      if (sc.covers(k, n) && !alloc.is_scheduled(k)) covering.push_back(k);
    }
    bool served = false;
    for (int k : by_quality_desc(sc, std::move(covering))) {
      const auto m = cheapest_feasible_subband(alloc, inst.channel, k);
      if (!m) continue;
      alloc.place_camera(k, *m, inst.channel.rb(*m, k));
      mark_covered(covered, sc, k);
      served = true;
      break;
    }
    if (!served) {
      throw Infeasible("MQBS coverage phase: no camera covering object " +
                       std::to_string(n + 1) + " fits any sub-band");
    }
  }
  return alloc;
}

AllocationMap mqbs_improvement_phase(AllocationMap alloc, const ScheduleInstance& inst) {
  check_start(inst, alloc);
  std::vector<int> rest;
  for (int k = 0; k < inst.num_cameras(); ++k) {
    if (!alloc.is_scheduled(k)) rest.push_back(k);
  }
  for (int k : by_quality_desc(inst.scenario, std::move(rest))) {
    if (const auto m = cheapest_feasible_subband(alloc, inst.channel, k)) {
      alloc.place_camera(k, *m, inst.channel.rb(*m, k));
    }
  }
  return alloc;
}

AllocationMap schedule_mqbs(const ScheduleInstance& inst) {
  return mqbs_improvement_phase(mqbs_coverage_phase(inst), inst);
}

AllocationMap schedule_mqbs(const ScheduleInstance& inst, AllocationMap start) {
  return mqbs_improvement_phase(mqbs_coverage_phase(inst, std::move(start)), inst);
}

namespace {

struct Pick {
  int camera = -1;
  int sub_band = -1;
  int rb = ChannelState::kNoFit;
};

// Smallest feasible r over the given cameras; ties go to the lower camera
// index, then the lower sub-band index.
template <typename Eligible>
Pick cheapest_camera(const AllocationMap& alloc, const ScheduleInstance& inst,
                     Eligible eligible) {
  Pick best;
  for (int k = 0; k < inst.num_cameras(); ++k) {
    if (alloc.is_scheduled(k) || !eligible(k)) continue;
    const auto m = cheapest_feasible_subband(alloc, inst.channel, k);
    if (!m) continue;
    const int r = inst.channel.rb(*m, k);
    if (r < best.rb) best = {k, *m, r};
  }
  return best;
}

}  // namespace

AllocationMap baseline_coverage_phase(const ScheduleInstance& inst) {
  return baseline_coverage_phase(inst, AllocationMap::empty(inst.num_cameras(), inst.spectrum));
}

AllocationMap baseline_coverage_phase(const ScheduleInstance& inst, AllocationMap alloc) {
  check_start(inst, alloc);
  const Scenario& sc = inst.scenario;
  std::vector<bool> covered = covered_by(alloc, sc);
  auto uncovered_left = [&] { return std::find(covered.begin(), covered.end(), false) != covered.end(); };
  while (uncovered_left()) {
    const Pick pick = cheapest_camera(alloc, inst, [&](int k) {
      for (int n = 0; n < sc.num_objects(); ++n) {
        if (!covered[n] && sc.covers(k, n)) return true;
      }
      return false;
    });
    if (pick.camera < 0) {
      const auto n = std::find(covered.begin(), covered.end(), false) - covered.begin();
      throw Infeasible("baseline: no camera covering object " + std::to_string(n + 1) +
                       " fits any sub-band");
    }
    alloc.place_camera(pick.camera, pick.sub_band, pick.rb);
    mark_covered(covered, sc, pick.camera);
  }
  return alloc;
}

AllocationMap baseline_fill_phase(AllocationMap alloc, const ScheduleInstance& inst) {
  check_start(inst, alloc);
  for (;;) {
    const Pick pick = cheapest_camera(alloc, inst, [](int) { return true; });
    if (pick.camera < 0) return alloc;
    alloc.place_camera(pick.camera, pick.sub_band, pick.rb);
  }
}

AllocationMap schedule_baseline(const ScheduleInstance& inst) {
  return baseline_fill_phase(baseline_coverage_phase(inst), inst);
}

AllocationMap schedule_baseline(const ScheduleInstance& inst, AllocationMap start) {
  return baseline_fill_phase(baseline_coverage_phase(inst, std::move(start)), inst);
}

}  // namespace survsched
