#pragma once

#include <optional>
#include <string>
#include <vector>

#include "survsched/channel.hpp"
#include "survsched/scenario.hpp"

namespace survsched {

struct ScheduleInstance {
  Scenario scenario;
  ChannelState channel;
  SpectrumConfig spectrum;

  int num_cameras() const { return scenario.num_cameras(); }
  int num_objects() const { return scenario.num_objects(); }
  int sub_bands() const { return spectrum.sub_bands; }

  // Throws InvalidArgument when K, N or M disagree across the parts.
  void validate() const;

  friend bool operator==(const ScheduleInstance&, const ScheduleInstance&) = default;
};

enum class Holder { kCamera, kBackground };

// A contiguous run of physical RBs inside one sub-band. Indices are 0-based.
struct RbRange {
  Holder holder = Holder::kCamera;
  int owner = 0;  // camera index, or background flow id
  int sub_band = 0;
  int first_rb = 0;
  int rb_count = 0;

  int last_rb() const { return first_rb + rb_count - 1; }

  friend bool operator==(const RbRange&, const RbRange&) = default;
};

// One placement request for place_contiguous.
struct PlacementRequest {
  Holder holder = Holder::kCamera;
  int owner = 0;
  int sub_band = 0;
  int rb_count = 0;
};

// Packs requests left-to-right in order within each sub-band. Throws
// CapacityExceeded when a sub-band would need more than rbs_per_subband RBs.
std::vector<RbRange> place_contiguous(const std::vector<PlacementRequest>& requests,
                                      const SpectrumConfig& cfg);

// x[m][k] plus the physical layout. Mutators keep every sub-band left-packed;
// the fields stay public so the validator can inspect arbitrary (possibly
// broken) maps read from disk.
struct AllocationMap {
  int sub_bands = 0;
  int rbs_per_subband = 0;
  std::vector<std::vector<std::uint8_t>> x;  // [m][k]
  std::vector<RbRange> ranges;               // in allocation order
  std::vector<int> remaining;                // R_m

  static AllocationMap empty(int num_cameras, const SpectrumConfig& cfg);

  int num_cameras() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
  std::optional<int> sub_band_of(int k) const;
  bool is_scheduled(int k) const { return sub_band_of(k).has_value(); }
  std::vector<int> scheduled_cameras() const;
  std::vector<int> cameras_in(int m) const;
  const RbRange* range_of(Holder holder, int owner) const;
  int used_rbs() const;

  // Appends a range right after the sub-band's current occupants. Throws
  // CapacityExceeded when rb_count > remaining[m].
  void place_camera(int k, int m, int rb_count);
  void place_background(int flow_id, int m, int rb_count);
  // Frees the holder's RBs and re-packs the sub-band left-to-right.
  void release_camera(int k);
  void release_background(int flow_id);

  friend bool operator==(const AllocationMap&, const AllocationMap&) = default;

 private:
  void place(Holder holder, int owner, int m, int rb_count);
  void release(Holder holder, int owner);
};

// z = sum_m sum_k x[m][k] * Q_k
double objective_value(const AllocationMap& alloc, const Scenario& scenario);

enum class ViolationKind {
  kMultipleSubBands,    // constraint (1)
  kObjectUncovered,     // constraint (2)
  kCapacityExceeded,    // constraint (3)
  kNonBinary,           // constraint (4)
  kRangeMismatch,       // range count or size disagrees with x / r_{m,k}
  kRangeOutOfBounds,
  kRangeOverlap,
  kRemainingMismatch,
  kUnusableSubBand,     // r_{m,k} absent but x[m][k] = 1
  kShapeMismatch,
};

struct Violation {
  ViolationKind kind;
  int sub_band = -1;
  int camera = -1;
  int object = -1;
  std::string detail;
};

std::string to_string(ViolationKind kind);

// Empty iff the allocation satisfies every constraint, contiguity and
// disjointness included. Never throws.
std::vector<Violation> validate_allocation(const AllocationMap& alloc,
                                           const ScheduleInstance& inst);

// Human-readable grid, one row per sub-band, e.g.
//   Sub-band 1 | Camera6 Camera6 Camera4 Camera4 Camera4
std::string render_grid(const AllocationMap& alloc);

}  // namespace survsched
