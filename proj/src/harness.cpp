#include "survsched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "survsched/errors.hpp"
#include "survsched/rng.hpp"

namespace survsched {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kObjectCount: return "objects";
    case SweepVariable::kCameraCount: return "cameras";
    case SweepVariable::kAngleOfView: return "angle";
    case SweepVariable::kDistanceOfView: return "distance";
  }
  return "unknown";
}

SweepVariable sweep_variable_from(const std::string& s) {
  if (s == "objects") return SweepVariable::kObjectCount;
  if (s == "cameras") return SweepVariable::kCameraCount;
  if (s == "angle") return SweepVariable::kAngleOfView;
  if (s == "distance") return SweepVariable::kDistanceOfView;
  throw InvalidArgument("unknown sweep variable \"" + s + "\"");
}

void ExperimentConfig::validate() const {
  if (sweep_values.empty()) throw InvalidArgument("sweep_values is empty");
  if (!std::is_sorted(sweep_values.begin(), sweep_values.end())) {
    throw InvalidArgument("sweep_values must be sorted");
  }
  if (runs_per_point < 1) throw InvalidArgument("runs_per_point must be >= 1");
  if (max_instances_per_run < 1) throw InvalidArgument("max_instances_per_run must be >= 1");
  spectrum.validate();
  validate_mcs_table(mcs_table);
}

ScenarioParams ExperimentConfig::params_for(double v) const {
  ScenarioParams p = scenario;
  switch (sweep_variable) {
    case SweepVariable::kObjectCount: p.num_objects = static_cast<int>(std::lround(v)); break;
    case SweepVariable::kCameraCount: p.num_cameras = static_cast<int>(std::lround(v)); break;
    case SweepVariable::kAngleOfView: p.angle_of_view = deg_to_rad(v); break;
    case SweepVariable::kDistanceOfView:
      p.distance_of_view = v;
      // Keep the best distance tied to the sector radius.
      if (!scenario.best_distance) p.best_distance.reset();
      break;
  }
  return p;
}

ScenarioParams sweep_scenario_defaults() {
  ScenarioParams p;
  p.bitrates = {128e3, 256e3, 512e3};
  return p;
}

ExperimentConfig ExperimentConfig::defaults_for(SweepVariable v) {
  ExperimentConfig c;
  c.sweep_variable = v;
  switch (v) {
    case SweepVariable::kObjectCount:
    case SweepVariable::kCameraCount: c.sweep_values = {30, 40, 50, 60, 70, 80}; break;
    case SweepVariable::kAngleOfView: c.sweep_values = {90, 105, 120, 135, 150, 165, 180}; break;
    case SweepVariable::kDistanceOfView: c.sweep_values = {80, 90, 100, 110, 120, 130, 140}; break;
  }
  return c;
}

ChannelEnv channel_env_for(const ExperimentConfig& config, std::uint64_t scenario_seed) {
  ChannelEnv env = config.env;
  env.seed = derive_seed({scenario_seed, 0x636861ULL});
  return env;
}

ScheduleInstance build_instance(const ExperimentConfig& config, const ScenarioParams& params) {
  ScheduleInstance inst;
  inst.scenario = generate_scenario(params);
  inst.spectrum = config.spectrum;
  inst.channel = build_channel_state(inst.scenario, inst.spectrum,
                                     channel_env_for(config, params.seed), config.mcs_table);
  return inst;
}

std::optional<std::pair<AlgoMetrics, AlgoMetrics>> evaluate_instance(const ScheduleInstance& inst) {
  AlgoMetrics mq;
  AlgoMetrics bl;
  try {
    const AllocationMap cover = mqbs_coverage_phase(inst);
    mq.min_rb = cover.used_rbs();
    mq.q_minrb = objective_value(cover, inst.scenario);
    mq.q_all = objective_value(mqbs_improvement_phase(cover, inst), inst.scenario);

    const AllocationMap base = baseline_coverage_phase(inst);
    bl.min_rb = base.used_rbs();
    bl.q_minrb = objective_value(base, inst.scenario);
    bl.q_all = objective_value(baseline_fill_phase(base, inst), inst.scenario);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
  return std::make_pair(mq, bl);
}

PointRecord run_point(const ExperimentConfig& config, double sweep_value, int run_index) {
  PointRecord rec;
  rec.sweep_value = sweep_value;
  rec.run_index = run_index;
  ScenarioParams params = config.params_for(sweep_value);
  params.max_attempts = 1;
  for (int attempt = 0; attempt < config.max_instances_per_run; ++attempt) {
    params.seed = derive_seed({config.base_seed, std::bit_cast<std::uint64_t>(sweep_value),
                               static_cast<std::uint64_t>(run_index),
                               static_cast<std::uint64_t>(attempt)});
    ++rec.instances_drawn;
    ScheduleInstance inst;
    try {
      inst = build_instance(config, params);
    } catch (const FeasibilityExhausted&) {
      continue;
    }
    if (auto metrics = evaluate_instance(inst)) {
      rec.seed = params.seed;
      rec.mqbs = metrics->first;
      rec.baseline = metrics->second;
      return rec;
    }
  }
  throw Infeasible("run_point: no feasible instance for " + to_string(config.sweep_variable) +
                   " = " + std::to_string(sweep_value) + " after " +
                   std::to_string(config.max_instances_per_run) + " draws");
}

namespace {

struct Moments {
  double mean = 0.0;
  double ci95 = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.ci95 = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return m;
}

}  // namespace

std::vector<ResultRow> aggregate(const ExperimentConfig& config,
                                 const std::vector<PointRecord>& records) {
  std::vector<ResultRow> rows;
  for (double v : config.sweep_values) {
    std::vector<const PointRecord*> at;
    long long drawn = 0;
    for (const PointRecord& r : records) {
      if (r.sweep_value == v) {
        at.push_back(&r);
        drawn += r.instances_drawn;
      }
    }
    for (const char* algo : {"mqbs", "baseline"}) {
      const bool is_mqbs = std::string(algo) == "mqbs";
      std::vector<double> min_rb, q_min, q_all;
      for (const PointRecord* r : at) {
        const AlgoMetrics& m = is_mqbs ? r->mqbs : r->baseline;
        min_rb.push_back(m.min_rb);
        q_min.push_back(m.q_minrb);
        q_all.push_back(m.q_all);
      }
      ResultRow row;
      row.sweep_var = to_string(config.sweep_variable);
      row.sweep_value = v;
      row.algo = algo;
      const Moments mr = moments(min_rb);
      const Moments qa = moments(q_all);
      row.min_rb_mean = mr.mean;
      row.min_rb_ci95 = mr.ci95;
      row.q_minrb_mean = moments(q_min).mean;
      row.q_all_mean = qa.mean;
      row.q_all_ci95 = qa.ci95;
      row.runs = static_cast<int>(at.size());
      row.feasible_frac = drawn > 0 ? static_cast<double>(at.size()) / drawn : 0.0;
      if (!at.empty()) {
        row.seed_first = at.front()->seed;
        row.seed_last = at.back()->seed;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const int per_point = config.runs_per_point;
  const std::size_t total = config.sweep_values.size() * static_cast<std::size_t>(per_point);
  std::vector<PointRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        records[i] = run_point(config, config.sweep_values[i / per_point],
                               static_cast<int>(i % per_point));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return aggregate(config, records);
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "sweep_var,sweep_value,algo,min_rb_mean,min_rb_ci95,q_minrb_mean,q_all_mean,"
        "q_all_ci95,feasible_frac,runs\n";
  char buf[512];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%g,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                  r.sweep_var.c_str(), r.sweep_value, r.algo.c_str(), r.min_rb_mean,
                  r.min_rb_ci95, r.q_minrb_mean, r.q_all_mean, r.q_all_ci95, r.feasible_frac,
                  r.runs);
    os << buf;
  }
  return os.str();
}

std::vector<TrafficEvent> generate_event_trace(const TrafficModel& model,
                                               const SpectrumConfig& spectrum,
                                               std::int64_t horizon_ms, std::uint64_t seed) {
  if (!(model.arrivals_per_s > 0.0) || !(model.mean_lifetime_s > 0.0)) {
    throw InvalidArgument("traffic model rates must be positive");
  }
  const int hi = model.max_rbs > 0 ? model.max_rbs : std::max(1, spectrum.rbs_per_subband / 2);
  if (model.min_rbs < 1 || model.min_rbs > hi) throw InvalidArgument("bad traffic demand range");
  Rng rng(seed);
  auto exponential = [&](double mean) {
    double u = uniform01(rng);
    while (u <= 0.0) u = uniform01(rng);
    return -mean * std::log(u);
  };
  std::vector<TrafficEvent> events;
  double t_s = 0.0;
  int next_id = 1;
  for (;;) {
    t_s += exponential(1.0 / model.arrivals_per_s);
    const auto arrive = static_cast<std::int64_t>(std::floor(t_s * 1000.0));
    if (arrive > horizon_ms) break;
    TrafficEvent a;
    a.time_ms = arrive;
    a.kind = EventKind::kArrival;
    a.flow.id = next_id++;
    for (int m = 0; m < spectrum.sub_bands; ++m) {
      a.flow.rb_req.push_back(static_cast<int>(uniform_int(rng, model.min_rbs, hi)));
    }
    const auto leave = arrive + std::max<std::int64_t>(
                                    1, static_cast<std::int64_t>(
                                           std::floor(exponential(model.mean_lifetime_s) * 1000.0)));
    events.push_back(a);
    if (leave <= horizon_ms) {
      TrafficEvent d;
      d.time_ms = leave;
      d.kind = EventKind::kDeparture;
      d.flow.id = a.flow.id;
      events.push_back(d);
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const TrafficEvent& a, const TrafficEvent& b) {
    if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
    return a.kind == EventKind::kArrival && b.kind == EventKind::kDeparture;
  });
  return events;
}

namespace {

TimelineEntry snapshot(const DynamicState& state, std::int64_t t, std::string kind) {
  TimelineEntry e;
  e.time_ms = t;
  e.kind = std::move(kind);
  e.remaining = state.alloc.remaining;
  e.scheduled = state.alloc.scheduled_cameras();
  e.active_flows = static_cast<int>(state.flows.size());
  e.z = objective_value(state.alloc, state.instance->scenario);
  e.coverage_ok = coverage_holds(state);
  return e;
}

void run_epoch(DynamicState& state, std::int64_t t, std::vector<TimelineEntry>& log) {
  const ScheduleInstance& inst = *state.instance;
  AllocationMap start = AllocationMap::empty(inst.num_cameras(), inst.spectrum);
  for (const BackgroundFlow& f : state.flows) {
    start.place_background(f.id, *f.assigned_subband, *f.assigned_rbs);
  }
  std::string note;
  try {
    state.alloc = schedule_mqbs(inst, std::move(start));
  } catch (const Infeasible&) {
    note = "epoch_infeasible";
  }
  TimelineEntry e = snapshot(state, t, "epoch");
  e.note = std::move(note);
  log.push_back(std::move(e));
}

}  // namespace

std::vector<TimelineEntry> run_timeline(std::shared_ptr<const ScheduleInstance> instance,
                                        const std::vector<TrafficEvent>& events,
                                        std::int64_t period_ms,
                                        std::optional<std::int64_t> horizon_ms,
                                        std::optional<OffloadThresholds> thresholds) {
  if (period_ms <= 0) throw InvalidArgument("run_timeline: period must be positive");
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].time_ms < events[i - 1].time_ms) {
      throw InvalidArgument("run_timeline: events are not time-ordered");
    }
  }
  const std::int64_t horizon =
      horizon_ms.value_or(events.empty() ? 0 : events.back().time_ms);
  DynamicState state = make_dynamic_state(
      instance, AllocationMap::empty(instance->num_cameras(), instance->spectrum), thresholds);

  std::vector<TimelineEntry> log;
  std::int64_t next_epoch = 0;
  auto epochs_until = [&](std::int64_t t) {
    while (next_epoch <= t && next_epoch <= horizon) {
      run_epoch(state, next_epoch, log);
      next_epoch += period_ms;
    }
  };
  for (const TrafficEvent& ev : events) {
    if (ev.time_ms > horizon) break;
    epochs_until(ev.time_ms);
    if (ev.kind == EventKind::kArrival) {
      const AdmitOutcome outcome = admit_background(state, ev.flow);
      TimelineEntry e = snapshot(state, ev.time_ms, "arrival");
      e.flow_id = ev.flow.id;
      e.outcome = outcome;
      log.push_back(std::move(e));
    } else {
      std::string note;
      try {
        release_background(state, ev.flow.id);
      } catch (const UnknownFlow&) {
        note = "unknown_flow";
      }
      TimelineEntry e = snapshot(state, ev.time_ms, "departure");
      e.flow_id = ev.flow.id;
      e.note = std::move(note);
      log.push_back(std::move(e));
    }
  }
  epochs_until(horizon);
  return log;
}

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig c) {
  if (auto it = j.find("sweep"); it != j.end()) {
    const Json& s = *it;
    if (s.contains("var")) {
      const SweepVariable v = sweep_variable_from(s["var"].get<std::string>());
      if (v != c.sweep_variable) {
        c.sweep_variable = v;
        c.sweep_values = ExperimentConfig::defaults_for(v).sweep_values;
      }
    }
    if (s.contains("values")) c.sweep_values = s["values"].get<std::vector<double>>();
    if (s.contains("runs_per_point")) c.runs_per_point = s["runs_per_point"].get<int>();
    if (s.contains("base_seed")) c.base_seed = s["base_seed"].get<std::uint64_t>();
    if (s.contains("threads")) c.threads = s["threads"].get<int>();
    if (s.contains("max_instances_per_run")) {
      c.max_instances_per_run = s["max_instances_per_run"].get<int>();
    }
  }
  if (auto it = j.find("scenario"); it != j.end()) c.scenario = scenario_params_from_json(*it, c.scenario);
  if (auto it = j.find("spectrum"); it != j.end()) c.spectrum = spectrum_from_json(*it, c.spectrum);
  if (auto it = j.find("env"); it != j.end()) c.env = env_from_json(*it, c.env);
  if (auto it = j.find("mcs_table"); it != j.end()) c.mcs_table = mcs_table_from_json(*it);
  return c;
}

TrafficModel traffic_model_from_json(const Json& j, TrafficModel m) {
  const Json& t = j.contains("traffic") ? j["traffic"] : j;
  m.arrivals_per_s = t.value("arrivals_per_s", m.arrivals_per_s);
  m.min_rbs = t.value("min_rbs", m.min_rbs);
  m.max_rbs = t.value("max_rbs", m.max_rbs);
  m.mean_lifetime_s = t.value("mean_lifetime_s", m.mean_lifetime_s);
  return m;
}

Json events_to_json(const std::vector<TrafficEvent>& events) {
  Json arr = Json::array();
  for (const TrafficEvent& e : events) {
    Json j;
    j["time_ms"] = e.time_ms;
    j["kind"] = e.kind == EventKind::kArrival ? "arrival" : "departure";
    j["flow"] = to_json(e.flow);
    arr.push_back(std::move(j));
  }
  Json doc;
  doc["events"] = std::move(arr);
  return doc;
}

std::vector<TrafficEvent> events_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("events");
  std::vector<TrafficEvent> out;
  for (const Json& ej : arr) {
    TrafficEvent e;
    e.time_ms = ej.at("time_ms").get<std::int64_t>();
    const std::string kind = ej.at("kind").get<std::string>();
    if (kind == "arrival") {
      e.kind = EventKind::kArrival;
    } else if (kind == "departure") {
      e.kind = EventKind::kDeparture;
    } else {
      throw InvalidArgument("unknown event kind \"" + kind + "\"");
    }
    e.flow = flow_from_json(ej.at("flow"));
    out.push_back(std::move(e));
  }
  return out;
}

std::string timeline_to_jsonl(const std::vector<TimelineEntry>& log) {
  std::string out;
  for (const TimelineEntry& e : log) {
    Json j;
    j["time_ms"] = e.time_ms;
    j["kind"] = e.kind;
    j["flow"] = e.flow_id ? Json(*e.flow_id) : Json(nullptr);
    if (e.outcome) j["outcome"] = to_json(*e.outcome);
    if (!e.note.empty()) j["note"] = e.note;
    j["remaining"] = e.remaining;
    Json cams = Json::array();
    for (int k : e.scheduled) cams.push_back(k + 1);
    j["scheduled"] = std::move(cams);
    j["active_flows"] = e.active_flows;
    j["z"] = e.z;
    j["coverage_ok"] = e.coverage_ok;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace survsched
