#include "survsched/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "survsched/errors.hpp"

namespace survsched {

OffloadThresholds OffloadThresholds::defaults(int rbs_per_subband) {
  return {(rbs_per_subband + 3) / 4, (rbs_per_subband + 1) / 2};
}

void DynamicState::validate() const {
  if (!instance) throw InvalidArgument("dynamic state has no instance");
  const int w_m = instance->spectrum.rbs_per_subband;
  if (!(0 <= thresholds.th_h && thresholds.th_h < thresholds.th_l && thresholds.th_l <= w_m)) {
    throw InvalidArgument("offload thresholds need 0 <= th_h < th_l <= W_m");
  }
  if (alloc.sub_bands != instance->spectrum.sub_bands || alloc.rbs_per_subband != w_m ||
      alloc.num_cameras() != instance->num_cameras()) {
    throw InvalidArgument("dynamic state allocation does not match its instance");
  }
}

const BackgroundFlow* DynamicState::find_flow(int id) const {
  for (const BackgroundFlow& f : flows) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

DynamicState make_dynamic_state(std::shared_ptr<const ScheduleInstance> instance,
                                AllocationMap alloc,
                                std::optional<OffloadThresholds> thresholds) {
  DynamicState s;
  const int w_m = instance ? instance->spectrum.rbs_per_subband : 0;
  s.instance = std::move(instance);
  s.alloc = std::move(alloc);
  s.thresholds = thresholds.value_or(OffloadThresholds::defaults(w_m));
  s.validate();
  return s;
}

const char* to_string(AdmitDecision d) {
  switch (d) {
    case AdmitDecision::kAdmitted: return "admitted";
    case AdmitDecision::kAdmittedWithReroute: return "admitted_with_reroute";
    case AdmitDecision::kAdmittedWithRemoval: return "admitted_with_removal";
    case AdmitDecision::kRejected: return "rejected";
  }
  return "unknown";
}

bool coverage_holds(const DynamicState& state) {
  const Scenario& sc = state.instance->scenario;
  const auto scheduled = state.alloc.scheduled_cameras();
  for (int n = 0; n < sc.num_objects(); ++n) {
    const bool covered = std::any_of(scheduled.begin(), scheduled.end(),
                                     [&](int k) { return sc.covers(k, n); });
    if (!covered) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> reroute_camera(DynamicState& state, int candidate_m,
                                                  int offload_m) {
  const ScheduleInstance& inst = *state.instance;
  const Scenario& sc = inst.scenario;
  if (candidate_m == offload_m) {
    throw InvalidArgument("reroute_camera: candidate and offload sub-bands must differ");
  }
  const std::vector<int> hosted = state.alloc.cameras_in(candidate_m);
  if (hosted.empty()) return std::nullopt;

  int k_remove = -1;
  int r_largest = 0;
  for (int k : hosted) {
    if (inst.channel.rb(candidate_m, k) > r_largest) {
      r_largest = inst.channel.rb(candidate_m, k);
      k_remove = k;
    }
  }

  std::vector<bool> covered(sc.num_objects(), false);
  for (int k : state.alloc.scheduled_cameras()) {
    if (k == k_remove) continue;
    for (int n = 0; n < sc.num_objects(); ++n) {
      if (sc.covers(k, n)) covered[n] = true;
    }
  }

  int k_join = -1;
  int r_join = ChannelState::kNoFit;
  for (int k = 0; k < sc.num_cameras(); ++k) {
    if (state.alloc.is_scheduled(k) || !inst.channel.can_use(offload_m, k)) continue;
    bool patches = true;
    for (int n = 0; n < sc.num_objects() && patches; ++n) {
      if (!covered[n] && !sc.covers(k, n)) patches = false;
    }
    if (patches && inst.channel.rb(offload_m, k) < r_join) {
      r_join = inst.channel.rb(offload_m, k);
      k_join = k;
    }
  }
  if (k_join < 0 || state.alloc.remaining[offload_m] - r_join <= state.thresholds.th_h) {
    return std::nullopt;
  }
  state.alloc.release_camera(k_remove);
  state.alloc.place_camera(k_join, offload_m, r_join);
  return std::make_pair(k_remove, k_join);
}

std::optional<int> remove_camera(DynamicState& state, int candidate_m) {
  const ScheduleInstance& inst = *state.instance;
  const Scenario& sc = inst.scenario;
  std::vector<int> hosted = state.alloc.cameras_in(candidate_m);
  if (hosted.empty()) return std::nullopt;

  std::vector<bool> covered(sc.num_objects(), false);
  for (int k : state.alloc.scheduled_cameras()) {
    if (state.alloc.x[candidate_m][k]) continue;
    for (int n = 0; n < sc.num_objects(); ++n) {
      if (sc.covers(k, n)) covered[n] = true;
    }
  }

  auto coverage_size = [&](int k) {
    int c = 0;
    for (int n = 0; n < sc.num_objects(); ++n) c += sc.covers(k, n) ? 1 : 0;
    return c;
  };
  std::stable_sort(hosted.begin(), hosted.end(),
                   [&](int a, int b) { return coverage_size(a) > coverage_size(b); });

  std::vector<bool> required(sc.num_cameras(), false);
  for (int n = 0; n < sc.num_objects(); ++n) {
    if (covered[n]) continue;
    for (int k : hosted) {
      if (!sc.covers(k, n)) continue;
      required[k] = true;
      for (int j = 0; j < sc.num_objects(); ++j) {
        if (sc.covers(k, j)) covered[j] = true;
      }
      break;
    }
  }

  int k_remove = -1;
  double lowest = std::numeric_limits<double>::infinity();
  for (int k : hosted) {
    if (!required[k] && sc.qualities[k] < lowest) {
      lowest = sc.qualities[k];
      k_remove = k;
    }
  }
  if (k_remove < 0) return std::nullopt;
  state.alloc.release_camera(k_remove);
  return k_remove;
}

namespace {

void check_arrival(const DynamicState& state, const BackgroundFlow& arrival) {
  if (static_cast<int>(arrival.rb_req.size()) != state.alloc.sub_bands) {
    throw InvalidArgument("flow " + std::to_string(arrival.id) + " has " +
                          std::to_string(arrival.rb_req.size()) + " requirements for " +
                          std::to_string(state.alloc.sub_bands) + " sub-bands");
  }
  for (int r : arrival.rb_req) {
    if (r <= 0) throw InvalidArgument("flow RB requirements must be positive");
  }
  if (state.find_flow(arrival.id) != nullptr) {
    throw InvalidArgument("flow " + std::to_string(arrival.id) + " is already active");
  }
}

// Widest other sub-band with at least th_l RBs left; lowest index on ties.
std::optional<int> offload_target(const DynamicState& state, int candidate_m) {
  std::optional<int> target;
  int load = 0;
  for (int m = 0; m < state.alloc.sub_bands; ++m) {
    const int r = state.alloc.remaining[m];
    if (m != candidate_m && r >= state.thresholds.th_l && r > load) {
      load = r;
      target = m;
    }
  }
  return target;
}

// Re-route when a target exists, removal otherwise or when re-routing finds
// no replacement. Records what happened in `out`.
void offload(DynamicState& state, int candidate_m, AdmitOutcome& out) {
  out.offload_subband = offload_target(state, candidate_m);
  if (out.offload_subband) {
    out.reroute_attempted = true;
    if (auto swap = reroute_camera(state, candidate_m, *out.offload_subband)) {
      out.k_remove = swap->first;
      out.k_join = swap->second;
      out.decision = AdmitDecision::kAdmittedWithReroute;
      return;
    }
  }
  out.removal_attempted = true;
  if (auto removed = remove_camera(state, candidate_m)) {
    out.k_remove = *removed;
    out.decision = AdmitDecision::kAdmittedWithRemoval;
  }
}

void place_flow(DynamicState& state, BackgroundFlow flow, int m) {
  const int rbs = flow.rb_req[m];
  state.alloc.place_background(flow.id, m, rbs);
  flow.assigned_subband = m;
  flow.assigned_rbs = rbs;
  state.flows.push_back(std::move(flow));
}

}  // namespace

AdmitOutcome admit_background(DynamicState& state, const BackgroundFlow& arrival) {
  check_arrival(state, arrival);
  AdmitOutcome out;
  const int m_count = state.alloc.sub_bands;

  std::optional<int> candidate;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int m = 0; m < m_count; ++m) {
    const int r_left = state.alloc.remaining[m];
    if (r_left > arrival.rb_req[m]) {
      const double ratio = static_cast<double>(arrival.rb_req[m]) / r_left;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        candidate = m;
      }
    }
  }

  if (candidate) {
    out.candidate_subband = candidate;
    out.decision = AdmitDecision::kAdmitted;
    place_flow(state, arrival, *candidate);
    if (state.alloc.remaining[*candidate] <= state.thresholds.th_h) {
      out.offload_needed = true;
      offload(state, *candidate, out);
    }
    return out;
  }

  // Fallback: offload the widest sub-band once, then retry there.
  const DynamicState before = state;
  int widest = 0;
  for (int m = 1; m < m_count; ++m) {
    if (state.alloc.remaining[m] > state.alloc.remaining[widest]) widest = m;
  }
  out.used_fallback = true;
  out.offload_needed = true;
  out.candidate_subband = widest;
  out.decision = AdmitDecision::kAdmitted;
  offload(state, widest, out);
  if (state.alloc.remaining[widest] >= arrival.rb_req[widest]) {
    place_flow(state, arrival, widest);
    return out;
  }
  state = before;
  AdmitOutcome rejected;
  rejected.decision = AdmitDecision::kRejected;
  rejected.candidate_subband = widest;
  rejected.offload_subband = out.offload_subband;
  rejected.offload_needed = true;
  rejected.reroute_attempted = out.reroute_attempted;
  rejected.removal_attempted = out.removal_attempted;
  rejected.used_fallback = true;
  return rejected;
}

void release_background(DynamicState& state, int flow_id) {
  auto it = std::find_if(state.flows.begin(), state.flows.end(),
                         [&](const BackgroundFlow& f) { return f.id == flow_id; });
  if (it == state.flows.end()) {
    throw UnknownFlow("no active background flow with id " + std::to_string(flow_id));
  }
  state.alloc.release_background(flow_id);
  state.flows.erase(it);
}

}  // namespace survsched
