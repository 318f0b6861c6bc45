#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "survsched/allocation.hpp"

namespace survsched {

struct BackgroundFlow {
  int id = 0;
  std::vector<int> rb_req;  // one entry per sub-band
  std::optional<int> assigned_subband;
  std::optional<int> assigned_rbs;

  friend bool operator==(const BackgroundFlow&, const BackgroundFlow&) = default;
};

// Offload thresholds in RBs: R_m <= th_h marks a congested sub-band,
// R_m >= th_l an eligible offload target.
struct OffloadThresholds {
  int th_h = 0;
  int th_l = 0;

  // ceil(W_m / 4) and ceil(W_m / 2).
  static OffloadThresholds defaults(int rbs_per_subband);

  friend bool operator==(const OffloadThresholds&, const OffloadThresholds&) = default;
};

struct DynamicState {
  std::shared_ptr<const ScheduleInstance> instance;
  AllocationMap alloc;
  std::vector<BackgroundFlow> flows;
  OffloadThresholds thresholds;

  // Throws InvalidArgument unless 0 <= th_h < th_l <= W_m and the allocation
  // matches the instance.
  void validate() const;
  const BackgroundFlow* find_flow(int id) const;

  friend bool operator==(const DynamicState&, const DynamicState&) = default;
};

DynamicState make_dynamic_state(std::shared_ptr<const ScheduleInstance> instance,
                                AllocationMap alloc,
                                std::optional<OffloadThresholds> thresholds = std::nullopt);

enum class AdmitDecision { kAdmitted, kAdmittedWithReroute, kAdmittedWithRemoval, kRejected };

const char* to_string(AdmitDecision d);

struct AdmitOutcome {
  AdmitDecision decision = AdmitDecision::kRejected;
  std::optional<int> candidate_subband;
  std::optional<int> offload_subband;
  std::optional<int> k_remove;
  std::optional<int> k_join;
  bool offload_needed = false;
  bool reroute_attempted = false;
  bool removal_attempted = false;
  // No sub-band could take the arrival outright; the widest one was offloaded.
  bool used_fallback = false;

  friend bool operator==(const AdmitOutcome&, const AdmitOutcome&) = default;
};

// Places the arrival in the sub-band minimizing r_m / R_m among those with
// R_m > r_m, then offloads the candidate when its remaining RBs drop to th_h
// or below: re-route toward the widest other sub-band with R_m >= th_l, or
// remove an unrequired camera. When no sub-band can take the arrival, the
// widest sub-band is offloaded once and the arrival placed there if room
// appeared; otherwise the outcome is kRejected and the state is untouched.
// Throws InvalidArgument on a malformed flow or duplicate id.
AdmitOutcome admit_background(DynamicState& state, const BackgroundFlow& arrival);

// Moves the camera with the largest r in candidate_m out, replacing it by
// the cheapest (in offload_m) unscheduled camera that covers everything the
// departure would leave uncovered. Applies the swap and returns
// (k_remove, k_join) only when R_offload - r_join > th_h; otherwise the state
// is unchanged.
std::optional<std::pair<int, int>> reroute_camera(DynamicState& state, int candidate_m,
                                                  int offload_m);

// Removes the lowest-quality camera in candidate_m that is not required for
// coverage. Returns the removed camera, or nullopt (state unchanged) when
// every camera there is required.
std::optional<int> remove_camera(DynamicState& state, int candidate_m);

// Frees the flow's RBs. Never adds cameras. Throws UnknownFlow.
void release_background(DynamicState& state, int flow_id);

// True when every object is covered by a scheduled camera.
bool coverage_holds(const DynamicState& state);

}  // namespace survsched
