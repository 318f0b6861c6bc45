// survsched: command-line front end for scenario generation, scheduling,
// exact solving, parameter sweeps and dynamic-event replay.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "survsched/errors.hpp"
#include "survsched/harness.hpp"
#include "survsched/io.hpp"
#include "survsched/oracle.hpp"
#include "survsched/sched.hpp"

namespace fs = std::filesystem;
using namespace survsched;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
    write_text_file(out_path, text);
  }
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig defaults = {}) {
  if (path.empty()) return defaults;
  return experiment_config_from_json(read_json_file(path), defaults);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink RB scheduling for LTE video-surveillance cells"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random feasible instance");
  std::string gen_config, gen_out;
  std::optional<int> gen_k, gen_n;
  std::optional<double> gen_angle, gen_dist, gen_radius;
  std::uint64_t gen_seed = 1;
  gen->add_option("--config", gen_config, "JSON config file");
  gen->add_option("--cameras", gen_k, "Number of cameras K");
  gen->add_option("--objects", gen_n, "Number of objects N");
  gen->add_option("--angle", gen_angle, "Angle of view, degrees");
  gen->add_option("--distance", gen_dist, "Distance of view, meters");
  gen->add_option("--radius", gen_radius, "Cell radius, meters");
  gen->add_option("--seed", gen_seed, "Scenario seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // schedule
  auto* sch = app.add_subcommand("schedule", "Run a static scheduler on an instance");
  std::string sch_algo = "mqbs", sch_instance, sch_out;
  bool sch_grid = false;
  sch->add_option("--algo", sch_algo, "mqbs or baseline")
      ->check(CLI::IsMember({"mqbs", "baseline"}));
  sch->add_option("--instance", sch_instance, "Instance JSON")->required();
  sch->add_option("--out", sch_out, "Output file (default stdout)");
  sch->add_flag("--grid", sch_grid, "Print the RB grid instead of JSON");

  // solve
  auto* sol = app.add_subcommand("solve", "Solve an instance exactly (small instances)");
  std::string sol_instance, sol_out;
  std::int64_t sol_budget = kDefaultNodeBudget;
  sol->add_option("--instance", sol_instance, "Instance JSON")->required();
  sol->add_option("--budget", sol_budget, "Node budget");
  sol->add_option("--out", sol_out, "Output file (default stdout)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  std::string swp_var = "objects", swp_out, swp_config;
  std::optional<int> swp_runs, swp_threads;
  std::optional<std::uint64_t> swp_seed;
  std::vector<double> swp_values;
  swp->add_option("--var", swp_var, "objects, cameras, angle or distance")
      ->check(CLI::IsMember({"objects", "cameras", "angle", "distance"}));
  swp->add_option("--out", swp_out, "Output directory")->required();
  swp->add_option("--config", swp_config, "JSON config file");
  swp->add_option("--runs", swp_runs, "Runs per sweep point");
  swp->add_option("--seed", swp_seed, "Base seed");
  swp->add_option("--values", swp_values, "Sweep values")->delimiter(',');
  swp->add_option("--threads", swp_threads, "Worker threads (0 = all cores)");

  // replay
  auto* rep = app.add_subcommand("replay", "Replay background-traffic events on an instance");
  std::string rep_instance, rep_events, rep_out;
  std::int64_t rep_period = 10000;
  std::optional<std::int64_t> rep_horizon;
  std::optional<int> rep_th_h, rep_th_l;
  rep->add_option("--instance", rep_instance, "Instance JSON")->required();
  rep->add_option("--events", rep_events, "Event trace JSON")->required();
  rep->add_option("--period-ms", rep_period, "MQBS period in ms");
  rep->add_option("--horizon-ms", rep_horizon, "Simulation end (default: last event)");
  rep->add_option("--th-h", rep_th_h, "Congestion threshold th_h (RBs)");
  rep->add_option("--th-l", rep_th_l, "Offload threshold th_l (RBs)");
  rep->add_option("--out", rep_out, "Output JSONL file (default stdout)");

  // traffic
  auto* trf = app.add_subcommand("traffic", "Generate a random background-traffic trace");
  std::string trf_config, trf_out, trf_instance;
  std::int64_t trf_horizon = 60000;
  std::uint64_t trf_seed = 1;
  trf->add_option("--instance", trf_instance, "Instance JSON (for the spectrum layout)")->required();
  trf->add_option("--config", trf_config, "JSON config with a \"traffic\" member");
  trf->add_option("--horizon-ms", trf_horizon, "Trace length in ms");
  trf->add_option("--seed", trf_seed, "Trace seed");
  trf->add_option("--out", trf_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ExperimentConfig cfg = load_config(gen_config);
      ScenarioParams p = cfg.scenario;
      if (gen_k) p.num_cameras = *gen_k;
      if (gen_n) p.num_objects = *gen_n;
      if (gen_angle) p.angle_of_view = deg_to_rad(*gen_angle);
      if (gen_dist) p.distance_of_view = *gen_dist;
      if (gen_radius) p.cell_radius = *gen_radius;
      p.seed = gen_seed;
      const ScheduleInstance inst = build_instance(cfg, p);
      emit(instance_to_json(inst, channel_env_for(cfg, p.seed), p).dump(2) + "\n", gen_out);
    } else if (*sch) {
      const ScheduleInstance inst = instance_from_json(read_json_file(sch_instance));
      const AllocationMap alloc =
          sch_algo == "mqbs" ? schedule_mqbs(inst) : schedule_baseline(inst);
      emit(sch_grid ? render_grid(alloc) : to_json(alloc, inst.scenario).dump(2) + "\n", sch_out);
    } else if (*sol) {
      const ScheduleInstance inst = instance_from_json(read_json_file(sol_instance));
      const ExactSolution s = solve_exact(inst, sol_budget);
      emit(to_json(s, inst.scenario).dump(2) + "\n", sol_out);
    } else if (*swp) {
      ExperimentConfig cfg =
          load_config(swp_config, ExperimentConfig::defaults_for(sweep_variable_from(swp_var)));
      cfg.sweep_variable = sweep_variable_from(swp_var);
      if (!swp_values.empty()) cfg.sweep_values = swp_values;
      if (swp_runs) cfg.runs_per_point = *swp_runs;
      if (swp_seed) cfg.base_seed = *swp_seed;
      if (swp_threads) cfg.threads = *swp_threads;
      const auto rows = run_sweep(cfg);
      fs::create_directories(swp_out);
      write_text_file(fs::path(swp_out) / ("sweep_" + swp_var + ".csv"), to_csv(rows));
    } else if (*rep) {
      auto inst = std::make_shared<const ScheduleInstance>(
          instance_from_json(read_json_file(rep_instance)));
      const auto events = events_from_json(read_json_file(rep_events));
      std::optional<OffloadThresholds> th;
      if (rep_th_h || rep_th_l) {
        OffloadThresholds d = OffloadThresholds::defaults(inst->spectrum.rbs_per_subband);
        th = OffloadThresholds{rep_th_h.value_or(d.th_h), rep_th_l.value_or(d.th_l)};
      }
      emit(timeline_to_jsonl(run_timeline(inst, events, rep_period, rep_horizon, th)), rep_out);
    } else if (*trf) {
      const ScheduleInstance inst = instance_from_json(read_json_file(trf_instance));
      const TrafficModel model =
          trf_config.empty() ? TrafficModel{} : traffic_model_from_json(read_json_file(trf_config));
      emit(events_to_json(generate_event_trace(model, inst.spectrum, trf_horizon, trf_seed)).dump(2) +
               "\n",
           trf_out);
    }
  } catch (const Infeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 3;
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
