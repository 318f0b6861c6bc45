#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "survsched/dynamic.hpp"
#include "survsched/io.hpp"
#include "survsched/sched.hpp"

namespace survsched {

enum class SweepVariable { kObjectCount, kCameraCount, kAngleOfView, kDistanceOfView };

// "objects", "cameras", "angle", "distance".
std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from(const std::string& s);

// ScenarioParams with rate classes {128, 256, 512} kbit/s.
ScenarioParams sweep_scenario_defaults();

struct ExperimentConfig {
  SweepVariable sweep_variable = SweepVariable::kObjectCount;
  // Counts for object/camera sweeps, degrees for angle, meters for distance.
  std::vector<double> sweep_values = {30, 40, 50, 60, 70, 80};
  // Fixed parameters; the swept one is overridden. Sweeps use lighter rate
  // classes than the generator default so the cell is not saturated.
  ScenarioParams scenario = sweep_scenario_defaults();
  SpectrumConfig spectrum;
  ChannelEnv env;
  std::vector<McsLevel> mcs_table = default_mcs_table();
  int runs_per_point = 500;
  std::uint64_t base_seed = 1;
  // Instances drawn per run before giving up on a sweep point.
  int max_instances_per_run = 100000;
  // Worker threads; 0 picks hardware concurrency. Output never depends on it.
  int threads = 0;

  // Throws InvalidArgument on an empty or unsorted sweep or runs_per_point < 1.
  void validate() const;
  ScenarioParams params_for(double sweep_value) const;

  // Defaults for one of the four sweeps: K = N = 50, 150 degrees, 100 m.
  static ExperimentConfig defaults_for(SweepVariable v);
};

struct AlgoMetrics {
  int min_rb = 0;         // RBs in use when the coverage step completes
  double q_minrb = 0.0;   // z at that point
  double q_all = 0.0;     // z after the full algorithm
};

// Both heuristics on one instance; nullopt when either cannot reach coverage.
std::optional<std::pair<AlgoMetrics, AlgoMetrics>> evaluate_instance(const ScheduleInstance& inst);

struct PointRecord {
  double sweep_value = 0.0;
  int run_index = 0;
  std::uint64_t seed = 0;   // seed of the instance that was kept
  long long instances_drawn = 0;  // including coverage/capacity rejects
  AlgoMetrics mqbs;
  AlgoMetrics baseline;
};

// Generates instances from hash(base_seed, sweep_value, run_index, attempt)
// until one admits coverage under both heuristics. Throws Infeasible when
// max_instances_per_run is exceeded.
PointRecord run_point(const ExperimentConfig& config, double sweep_value, int run_index);

// Channel environment of the instance generated from `scenario_seed`.
ChannelEnv channel_env_for(const ExperimentConfig& config, std::uint64_t scenario_seed);

ScheduleInstance build_instance(const ExperimentConfig& config, const ScenarioParams& params);

struct ResultRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string algo;  // "mqbs" or "baseline"
  double min_rb_mean = 0.0;
  double min_rb_ci95 = 0.0;
  double q_minrb_mean = 0.0;
  double q_all_mean = 0.0;
  double q_all_ci95 = 0.0;
  double feasible_frac = 0.0;
  int runs = 0;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 0;
};

std::vector<ResultRow> aggregate(const ExperimentConfig& config,
                                 const std::vector<PointRecord>& records);

// Runs every (sweep value, run) pair and aggregates one row per
// (sweep value, algorithm), mqbs first.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

// sweep_var,sweep_value,algo,min_rb_mean,min_rb_ci95,q_minrb_mean,q_all_mean,
// q_all_ci95,feasible_frac,runs
std::string to_csv(const std::vector<ResultRow>& rows);

// Background traffic.

enum class EventKind { kArrival, kDeparture };

struct TrafficEvent {
  std::int64_t time_ms = 0;
  EventKind kind = EventKind::kArrival;
  BackgroundFlow flow;  // departures only need the id
};

struct TrafficModel {
  double arrivals_per_s = 0.5;
  int min_rbs = 1;
  int max_rbs = 0;  // 0 means W_m / 2
  double mean_lifetime_s = 5.0;
};

// Poisson arrivals with per-sub-band demands uniform in [min_rbs, max_rbs]
// and exponential lifetimes; departures after horizon_ms are dropped. Sorted
// by time, arrivals before departures at equal times.
std::vector<TrafficEvent> generate_event_trace(const TrafficModel& model,
                                               const SpectrumConfig& spectrum,
                                               std::int64_t horizon_ms, std::uint64_t seed);

struct TimelineEntry {
  std::int64_t time_ms = 0;
  std::string kind;  // "epoch", "arrival" or "departure"
  std::optional<int> flow_id;
  std::optional<AdmitOutcome> outcome;
  std::string note;  // e.g. "epoch_infeasible", "unknown_flow"
  std::vector<int> remaining;
  std::vector<int> scheduled;  // camera indices
  int active_flows = 0;
  double z = 0.0;
  bool coverage_ok = false;
};

// MQBS at t = 0 and every period_ms up to horizon_ms (default: time of the
// last event); arrivals and departures in between go through the dynamic
// procedures. Epochs re-run MQBS from scratch around the active flows.
// Throws InvalidArgument when events are out of order or period_ms <= 0.
std::vector<TimelineEntry> run_timeline(std::shared_ptr<const ScheduleInstance> instance,
                                        const std::vector<TrafficEvent>& events,
                                        std::int64_t period_ms,
                                        std::optional<std::int64_t> horizon_ms = std::nullopt,
                                        std::optional<OffloadThresholds> thresholds = std::nullopt);

// Config document members: "scenario" (ScenarioParams), "spectrum", "env",
// "mcs_table", and "sweep" {"var", "values", "runs_per_point", "base_seed",
// "threads"}. Absent members keep the values in `defaults`.
ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig defaults = {});
TrafficModel traffic_model_from_json(const Json& j, TrafficModel defaults = {});

// Event trace document: {"events": [{"time_ms", "kind", "flow": {...}}]}.
Json events_to_json(const std::vector<TrafficEvent>& events);
std::vector<TrafficEvent> events_from_json(const Json& j);

// One JSON object per line.
std::string timeline_to_jsonl(const std::vector<TimelineEntry>& log);

}  // namespace survsched
