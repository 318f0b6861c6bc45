#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "survsched/errors.hpp"
#include "survsched/harness.hpp"
#include "survsched/io.hpp"
#include "survsched/rng.hpp"

namespace fixtures {

using namespace survsched;

inline ScheduleInstance worked_example() {
  return instance_from_json(read_json_file(std::string(SURVSCHED_DATA_DIR) + "/worked_example.json"));
}

// Camera k (0-based) sits in sub-band m of `alloc`, checked via x.
inline bool in_subband(const AllocationMap& alloc, int k, int m) {
  return alloc.sub_band_of(k) == std::optional<int>(m);
}

struct TabularShape {
  int cameras = 6;
  int objects = 5;
  int sub_bands = 3;
  int rbs_per_subband = 6;
  double cover_prob = 0.35;
  double missing_prob = 0.05;  // chance an r_{m,k} entry is absent
};

// Random tabular instance; every object covered by at least one camera.
// Capacity feasibility is not guaranteed.
inline ScheduleInstance random_tabular(std::uint64_t seed, const TabularShape& s) {
  Rng rng(seed);
  std::vector<std::vector<std::uint8_t>> cov(s.cameras, std::vector<std::uint8_t>(s.objects, 0));
  for (int k = 0; k < s.cameras; ++k) {
    for (int n = 0; n < s.objects; ++n) cov[k][n] = uniform01(rng) < s.cover_prob ? 1 : 0;
  }
  for (int n = 0; n < s.objects; ++n) {
    bool covered = false;
    for (int k = 0; k < s.cameras; ++k) covered = covered || cov[k][n];
    if (!covered) cov[uniform_int(rng, 0, s.cameras - 1)][n] = 1;
  }
  std::vector<double> q(s.cameras, 0.0);
  for (int k = 0; k < s.cameras; ++k) {
    for (int n = 0; n < s.objects; ++n) {
      if (cov[k][n]) q[k] += 0.1 * static_cast<double>(uniform_int(rng, 1, 20));
    }
  }
  std::vector<std::vector<std::optional<int>>> rb(s.sub_bands,
                                                  std::vector<std::optional<int>>(s.cameras));
  for (int m = 0; m < s.sub_bands; ++m) {
    for (int k = 0; k < s.cameras; ++k) {
      if (uniform01(rng) >= s.missing_prob) {
        rb[m][k] = static_cast<int>(uniform_int(rng, 1, s.rbs_per_subband));
      }
    }
  }
  ScheduleInstance inst;
  inst.scenario = make_tabular_scenario(std::move(cov), std::move(q));
  inst.channel = make_tabular_channel(std::move(rb));
  inst.spectrum = SpectrumConfig::uniform(s.sub_bands, s.rbs_per_subband);
  return inst;
}

// Geometric instance from the sweep generator; nullopt when the drawn scene
// leaves an object uncoverable.
inline std::optional<ScheduleInstance> random_geometric(std::uint64_t seed, int cameras,
                                                        int objects) {
  ExperimentConfig cfg;
  ScenarioParams p = cfg.scenario;
  p.num_cameras = cameras;
  p.num_objects = objects;
  p.seed = seed;
  p.max_attempts = 1;
  try {
    return build_instance(cfg, p);
  } catch (const FeasibilityExhausted&) {
    return std::nullopt;
  }
}

// Full (M+1)^K enumeration without pruning; nullopt when nothing is
// feasible. Independent of the branch-and-bound code.
inline std::optional<double> brute_force_optimum(const ScheduleInstance& inst) {
  const int k_count = inst.num_cameras();
  const int m_count = inst.sub_bands();
  const int n_count = inst.num_objects();
  std::vector<int> choice(k_count, 0);  // 0 = off, m + 1 = sub-band m
  std::optional<double> best;
  for (;;) {
    std::vector<int> load(m_count, 0);
    bool ok = true;
    double z = 0.0;
    for (int k = 0; k < k_count && ok; ++k) {
      if (choice[k] == 0) continue;
      const int m = choice[k] - 1;
      if (!inst.channel.can_use(m, k)) {
        ok = false;
        break;
      }
      load[m] += inst.channel.rb(m, k);
      ok = load[m] <= inst.spectrum.rbs_per_subband;
      z += inst.scenario.qualities[k];
    }
    for (int n = 0; n < n_count && ok; ++n) {
      bool covered = false;
      for (int k = 0; k < k_count && !covered; ++k) {
        covered = choice[k] != 0 && inst.scenario.covers(k, n);
      }
      ok = covered;
    }
    if (ok && (!best || z > *best)) best = z;
    int i = 0;
    while (i < k_count && ++choice[i] > m_count) choice[i++] = 0;
    if (i == k_count) break;
  }
  return best;
}

}  // namespace fixtures
