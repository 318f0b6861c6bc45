#include "survsched/allocation.hpp"

#include <algorithm>
#include <sstream>

#include "survsched/errors.hpp"

namespace survsched {

void ScheduleInstance::validate() const {
  spectrum.validate();
  const int k_count = scenario.num_cameras();
  if (static_cast<int>(scenario.coverage.size()) != k_count) {
    throw InvalidArgument("instance: coverage rows != number of cameras");
  }
  if (channel.sub_bands() != spectrum.sub_bands) {
    throw InvalidArgument("instance: channel has " + std::to_string(channel.sub_bands()) +
                          " sub-bands, spectrum has " + std::to_string(spectrum.sub_bands));
  }
  if (channel.num_cameras() != k_count) {
    throw InvalidArgument("instance: channel has " + std::to_string(channel.num_cameras()) +
                          " cameras, scenario has " + std::to_string(k_count));
  }
}

std::vector<RbRange> place_contiguous(const std::vector<PlacementRequest>& requests,
                                      const SpectrumConfig& cfg) {
  std::vector<int> next(cfg.sub_bands, 0);
  std::vector<RbRange> out;
  out.reserve(requests.size());
  for (const PlacementRequest& r : requests) {
    if (r.sub_band < 0 || r.sub_band >= cfg.sub_bands) {
      throw InvalidArgument("place_contiguous: sub-band index out of range");
    }
    if (r.rb_count <= 0) throw InvalidArgument("place_contiguous: rb_count must be positive");
    if (next[r.sub_band] + r.rb_count > cfg.rbs_per_subband) {
      throw CapacityExceeded("sub-band " + std::to_string(r.sub_band + 1) + " needs " +
                             std::to_string(next[r.sub_band] + r.rb_count) + " RBs, has " +
                             std::to_string(cfg.rbs_per_subband));
    }
    out.push_back({r.holder, r.owner, r.sub_band, next[r.sub_band], r.rb_count});
    next[r.sub_band] += r.rb_count;
  }
  return out;
}

AllocationMap AllocationMap::empty(int num_cameras, const SpectrumConfig& cfg) {
  AllocationMap a;
  a.sub_bands = cfg.sub_bands;
  a.rbs_per_subband = cfg.rbs_per_subband;
  a.x.assign(cfg.sub_bands, std::vector<std::uint8_t>(num_cameras, 0));
  a.remaining.assign(cfg.sub_bands, cfg.rbs_per_subband);
  return a;
}

std::optional<int> AllocationMap::sub_band_of(int k) const {
  for (int m = 0; m < sub_bands; ++m) {
    if (x[m][k]) return m;
  }
  return std::nullopt;
}

std::vector<int> AllocationMap::scheduled_cameras() const {
  std::vector<int> out;
  for (int k = 0; k < num_cameras(); ++k) {
    if (is_scheduled(k)) out.push_back(k);
  }
  return out;
}

std::vector<int> AllocationMap::cameras_in(int m) const {
  std::vector<int> out;
  for (int k = 0; k < num_cameras(); ++k) {
    if (x[m][k]) out.push_back(k);
  }
  return out;
}

const RbRange* AllocationMap::range_of(Holder holder, int owner) const {
  for (const RbRange& r : ranges) {
    if (r.holder == holder && r.owner == owner) return &r;
  }
  return nullptr;
}

int AllocationMap::used_rbs() const {
  int used = 0;
  for (int r : remaining) used += rbs_per_subband - r;
  return used;
}

void AllocationMap::place(Holder holder, int owner, int m, int rb_count) {
  if (m < 0 || m >= sub_bands) throw InvalidArgument("sub-band index out of range");
  if (rb_count <= 0) throw InvalidArgument("rb_count must be positive");
  if (rb_count > remaining[m]) {
    throw CapacityExceeded("sub-band " + std::to_string(m + 1) + " has " +
                           std::to_string(remaining[m]) + " RBs left, need " +
                           std::to_string(rb_count));
  }
  ranges.push_back({holder, owner, m, rbs_per_subband - remaining[m], rb_count});
  remaining[m] -= rb_count;
}

void AllocationMap::place_camera(int k, int m, int rb_count) {
  if (is_scheduled(k)) {
    throw InvalidArgument("camera " + std::to_string(k + 1) + " is already scheduled");
  }
  place(Holder::kCamera, k, m, rb_count);
  x[m][k] = 1;
}

void AllocationMap::place_background(int flow_id, int m, int rb_count) {
  if (range_of(Holder::kBackground, flow_id) != nullptr) {
    throw InvalidArgument("flow " + std::to_string(flow_id) + " is already placed");
  }
  place(Holder::kBackground, flow_id, m, rb_count);
}

void AllocationMap::release(Holder holder, int owner) {
  auto it = std::find_if(ranges.begin(), ranges.end(), [&](const RbRange& r) {
    return r.holder == holder && r.owner == owner;
  });
  if (it == ranges.end()) throw InvalidArgument("release: holder has no RBs");
  const int m = it->sub_band;
  remaining[m] += it->rb_count;
  ranges.erase(it);
  int next = 0;
  for (RbRange& r : ranges) {
    if (r.sub_band != m) continue;
    r.first_rb = next;
    next += r.rb_count;
  }
}

void AllocationMap::release_camera(int k) {
  const auto m = sub_band_of(k);
  if (!m) throw InvalidArgument("camera " + std::to_string(k + 1) + " is not scheduled");
  release(Holder::kCamera, k);
  x[*m][k] = 0;
}

void AllocationMap::release_background(int flow_id) { release(Holder::kBackground, flow_id); }

double objective_value(const AllocationMap& alloc, const Scenario& scenario) {
  double z = 0.0;
  for (const auto& row : alloc.x) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k]) z += scenario.qualities[k];
    }
  }
  return z;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMultipleSubBands: return "multiple_sub_bands";
    case ViolationKind::kObjectUncovered: return "object_uncovered";
    case ViolationKind::kCapacityExceeded: return "capacity_exceeded";
    case ViolationKind::kNonBinary: return "non_binary";
    case ViolationKind::kRangeMismatch: return "range_mismatch";
    case ViolationKind::kRangeOutOfBounds: return "range_out_of_bounds";
    case ViolationKind::kRangeOverlap: return "range_overlap";
    case ViolationKind::kRemainingMismatch: return "remaining_mismatch";
    case ViolationKind::kUnusableSubBand: return "unusable_sub_band";
    case ViolationKind::kShapeMismatch: return "shape_mismatch";
  }
  return "unknown";
}

std::vector<Violation> validate_allocation(const AllocationMap& alloc,
                                           const ScheduleInstance& inst) {
  std::vector<Violation> out;
  const int m_count = inst.spectrum.sub_bands;
  const int k_count = inst.num_cameras();
  const int n_count = inst.num_objects();
  const int w_m = inst.spectrum.rbs_per_subband;

  bool shape_ok = static_cast<int>(alloc.x.size()) == m_count &&
                  static_cast<int>(alloc.remaining.size()) == m_count &&
                  alloc.sub_bands == m_count && alloc.rbs_per_subband == w_m;
  for (const auto& row : alloc.x) shape_ok = shape_ok && static_cast<int>(row.size()) == k_count;
  if (!shape_ok) {
    out.push_back({ViolationKind::kShapeMismatch, -1, -1, -1,
                   "allocation dimensions disagree with the instance"});
    return out;
  }

  // (4)
  for (int m = 0; m < m_count; ++m) {
    for (int k = 0; k < k_count; ++k) {
      if (alloc.x[m][k] > 1) {
        out.push_back({ViolationKind::kNonBinary, m, k, -1, "x entry is not 0/1"});
      }
    }
  }
  // (1)
  for (int k = 0; k < k_count; ++k) {
    int count = 0;
    for (int m = 0; m < m_count; ++m) count += alloc.x[m][k] ? 1 : 0;
    if (count > 1) {
      out.push_back({ViolationKind::kMultipleSubBands, -1, k, -1,
                     "camera " + std::to_string(k + 1) + " uses " + std::to_string(count) +
                         " sub-bands"});
    }
  }
  // (2)
  for (int n = 0; n < n_count; ++n) {
    bool covered = false;
    for (int k = 0; k < k_count && !covered; ++k) {
      if (!inst.scenario.covers(k, n)) continue;
      for (int m = 0; m < m_count && !covered; ++m) covered = alloc.x[m][k] != 0;
    }
    if (!covered) {
      out.push_back({ViolationKind::kObjectUncovered, -1, -1, n,
                     "object " + std::to_string(n + 1) + " is not covered"});
    }
  }
  // (3), counting background RBs against the same budget.
  for (int m = 0; m < m_count; ++m) {
    long long demand = 0;
    for (int k = 0; k < k_count; ++k) {
      if (!alloc.x[m][k]) continue;
      if (!inst.channel.can_use(m, k)) {
        out.push_back({ViolationKind::kUnusableSubBand, m, k, -1,
                       "camera " + std::to_string(k + 1) + " has no MCS on sub-band " +
                           std::to_string(m + 1)});
        continue;
      }
      demand += inst.channel.rb(m, k);
    }
    for (const RbRange& r : alloc.ranges) {
      if (r.holder == Holder::kBackground && r.sub_band == m) demand += r.rb_count;
    }
    if (demand > w_m) {
      out.push_back({ViolationKind::kCapacityExceeded, m, -1, -1,
                     "sub-band " + std::to_string(m + 1) + " demands " + std::to_string(demand) +
                         " of " + std::to_string(w_m) + " RBs"});
    }
  }
  // Physical layout: one range per scheduled camera, sized r_{m,k}, in bounds,
  // pairwise disjoint, and R_m consistent with the occupied RBs.
  std::vector<int> camera_ranges(k_count, 0);
  std::vector<int> occupied(m_count, 0);
  std::vector<std::vector<int>> owner_at(m_count, std::vector<int>(w_m, -1));
  for (std::size_t i = 0; i < alloc.ranges.size(); ++i) {
    const RbRange& r = alloc.ranges[i];
    if (r.sub_band < 0 || r.sub_band >= m_count || r.rb_count <= 0 || r.first_rb < 0 ||
        r.first_rb + r.rb_count > w_m) {
      out.push_back({ViolationKind::kRangeOutOfBounds, r.sub_band,
                     r.holder == Holder::kCamera ? r.owner : -1, -1,
                     "range outside its sub-band"});
      continue;
    }
    occupied[r.sub_band] += r.rb_count;
    for (int rb = r.first_rb; rb <= r.last_rb(); ++rb) {
      if (owner_at[r.sub_band][rb] >= 0) {
        out.push_back({ViolationKind::kRangeOverlap, r.sub_band, -1, -1,
                       "RB " + std::to_string(rb + 1) + " of sub-band " +
                           std::to_string(r.sub_band + 1) + " is assigned twice"});
        break;
      }
      owner_at[r.sub_band][rb] = static_cast<int>(i);
    }
    if (r.holder != Holder::kCamera) continue;
    if (r.owner < 0 || r.owner >= k_count) {
      out.push_back({ViolationKind::kRangeMismatch, r.sub_band, -1, -1,
                     "range names an unknown camera"});
      continue;
    }
    ++camera_ranges[r.owner];
    if (!alloc.x[r.sub_band][r.owner]) {
      out.push_back({ViolationKind::kRangeMismatch, r.sub_band, r.owner, -1,
                     "camera " + std::to_string(r.owner + 1) + " holds RBs where x = 0"});
    } else if (inst.channel.can_use(r.sub_band, r.owner) &&
               r.rb_count != inst.channel.rb(r.sub_band, r.owner)) {
      out.push_back({ViolationKind::kRangeMismatch, r.sub_band, r.owner, -1,
                     "camera " + std::to_string(r.owner + 1) + " holds " +
                         std::to_string(r.rb_count) + " RBs, needs " +
                         std::to_string(inst.channel.rb(r.sub_band, r.owner))});
    }
  }
  for (int k = 0; k < k_count; ++k) {
    int scheduled = 0;
    for (int m = 0; m < m_count; ++m) scheduled += alloc.x[m][k] ? 1 : 0;
    if (scheduled > 0 && camera_ranges[k] != scheduled) {
      out.push_back({ViolationKind::kRangeMismatch, -1, k, -1,
                     "camera " + std::to_string(k + 1) + " has " +
                         std::to_string(camera_ranges[k]) + " ranges for " +
                         std::to_string(scheduled) + " sub-band assignments"});
    }
  }
  for (int m = 0; m < m_count; ++m) {
    if (alloc.remaining[m] < 0 || alloc.remaining[m] != w_m - occupied[m]) {
      out.push_back({ViolationKind::kRemainingMismatch, m, -1, -1,
                     "sub-band " + std::to_string(m + 1) + " reports R = " +
                         std::to_string(alloc.remaining[m]) + " but " +
                         std::to_string(occupied[m]) + " RBs are occupied"});
    }
  }
  return out;
}

std::string render_grid(const AllocationMap& alloc) {
  std::ostringstream os;
  for (int m = 0; m < alloc.sub_bands; ++m) {
    std::vector<std::string> cells(alloc.rbs_per_subband, "-");
    for (const RbRange& r : alloc.ranges) {
      if (r.sub_band != m) continue;
      const std::string label = (r.holder == Holder::kCamera ? "Camera" : "Flow") +
                                std::to_string(r.holder == Holder::kCamera ? r.owner + 1 : r.owner);
      for (int rb = r.first_rb; rb <= r.last_rb() && rb < alloc.rbs_per_subband; ++rb) {
        if (rb >= 0) cells[rb] = label;
      }
    }
    os << "Sub-band " << (m + 1) << " |";
    for (const auto& c : cells) os << ' ' << c;
    os << '\n';
  }
  return os.str();
}

}  // namespace survsched
