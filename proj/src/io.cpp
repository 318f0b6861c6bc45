#include "survsched/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "survsched/errors.hpp"

namespace survsched {

namespace {

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Point point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("a point is a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void read_opt(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->template get<T>();
}

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return *it;
}

const char* distance_term_name(DistanceTerm t) {
  return t == DistanceTerm::kAsWritten ? "as_written" : "peak_at_best";
}

DistanceTerm distance_term_from(const std::string& s) {
  if (s == "as_written") return DistanceTerm::kAsWritten;
  if (s == "peak_at_best") return DistanceTerm::kPeakAtBest;
  throw InvalidArgument("unknown distance_term \"" + s + "\"");
}

Json weights_json(const QoVWeights& w) { return Json::array({w.w_theta(), w.w_phi(), w.w_dist()}); }

QoVWeights weights_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidArgument("weights are [w_theta, w_phi, w_dist]");
  return QoVWeights(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json qov_json(const QoVOptions& o) {
  Json j;
  j["clamp_at_zero"] = o.clamp_at_zero;
  j["distance_term"] = distance_term_name(o.distance_term);
  return j;
}

QoVOptions qov_from(const Json& j, QoVOptions o = {}) {
  read_opt(j, "clamp_at_zero", o.clamp_at_zero);
  if (auto it = j.find("distance_term"); it != j.end()) {
    o.distance_term = distance_term_from(it->get<std::string>());
  }
  return o;
}

}  // namespace

Json to_json(const Scenario& s) {
  Json j;
  j["cell_radius"] = s.cell_radius;
  j["base_station"] = point_json(s.base_station);
  j["weights"] = weights_json(s.weights);
  j["qov"] = qov_json(s.qov_options);
  if (s.has_geometry()) {
    Json cams = Json::array();
    for (const CameraSpec& c : s.cameras) {
      Json cj;
      cj["id"] = c.id;
      cj["position"] = point_json(c.position);
      cj["boresight"] = c.boresight;
      cj["angle_of_view"] = c.angle_of_view;
      cj["distance_of_view"] = c.distance_of_view;
      cj["best_distance"] = c.best_distance;
      cj["bitrate"] = c.bitrate;
      cams.push_back(std::move(cj));
    }
    j["cameras"] = std::move(cams);
    Json objs = Json::array();
    for (const TargetObject& o : s.objects) {
      Json oj;
      oj["id"] = o.id;
      oj["position"] = point_json(o.position);
      oj["body_orientation"] = o.body_orientation;
      oj["elevation_angle"] = o.elevation_angle;
      objs.push_back(std::move(oj));
    }
    j["objects"] = std::move(objs);
  }
  j["num_objects"] = s.num_objects();
  Json sets = Json::array();
  for (int k = 0; k < s.num_cameras(); ++k) {
    Json set = Json::array();
    for (int n = 0; n < s.num_objects(); ++n) {
      if (s.covers(k, n)) set.push_back(n + 1);
    }
    sets.push_back(std::move(set));
  }
  j["coverage_sets"] = std::move(sets);
  j["qualities"] = s.qualities;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  read_opt(j, "cell_radius", s.cell_radius);
  if (auto it = j.find("base_station"); it != j.end()) s.base_station = point_from(*it);
  if (auto it = j.find("weights"); it != j.end()) s.weights = weights_from(*it);
  if (auto it = j.find("qov"); it != j.end()) s.qov_options = qov_from(*it);

  if (auto it = j.find("cameras"); it != j.end() && !it->empty()) {
    for (const Json& cj : *it) {
      CameraSpec c;
      c.id = require(cj, "id").get<int>();
      c.position = point_from(require(cj, "position"));
      c.boresight = require(cj, "boresight").get<double>();
      c.angle_of_view = require(cj, "angle_of_view").get<double>();
      c.distance_of_view = require(cj, "distance_of_view").get<double>();
      c.best_distance = cj.value("best_distance", c.distance_of_view / 2.0);
      c.bitrate = require(cj, "bitrate").get<double>();
      validate_camera(c);
      s.cameras.push_back(c);
    }
    for (const Json& oj : require(j, "objects")) {
      TargetObject o;
      o.id = require(oj, "id").get<int>();
      o.position = point_from(require(oj, "position"));
      o.body_orientation = normalize_angle(oj.value("body_orientation", 0.0));
      o.elevation_angle = oj.value("elevation_angle", 0.0);
      s.objects.push_back(o);
    }
    // Geometry is authoritative; derived tables are recomputed.
    compute_coverage_and_quality(s);
    return s;
  }

  std::vector<std::vector<std::uint8_t>> coverage;
  if (auto it = j.find("coverage"); it != j.end()) {
    coverage = it->get<std::vector<std::vector<std::uint8_t>>>();
  } else {
    const int n_count = require(j, "num_objects").get<int>();
    for (const Json& set : require(j, "coverage_sets")) {
      std::vector<std::uint8_t> row(n_count, 0);
      for (const Json& n : set) {
        const int id = n.get<int>();
        if (id < 1 || id > n_count) throw InvalidArgument("coverage set names an unknown object");
        row[id - 1] = 1;
      }
      coverage.push_back(std::move(row));
    }
  }
  Scenario tab = make_tabular_scenario(std::move(coverage),
                                       require(j, "qualities").get<std::vector<double>>());
  tab.cell_radius = s.cell_radius;
  tab.base_station = s.base_station;
  tab.weights = s.weights;
  tab.qov_options = s.qov_options;
  return tab;
}

Json to_json(const ScenarioParams& p) {
  Json j;
  j["cell_radius"] = p.cell_radius;
  j["num_cameras"] = p.num_cameras;
  j["num_objects"] = p.num_objects;
  // Trim conversion noise so 150 stays 150 in documents.
  j["angle_of_view_deg"] = std::round(rad_to_deg(p.angle_of_view) * 1e9) / 1e9;
  j["distance_of_view"] = p.distance_of_view;
  if (p.best_distance) j["best_distance"] = *p.best_distance;
  j["bitrates"] = p.bitrates;
  j["weights"] = weights_json(p.weights);
  j["qov"] = qov_json(p.qov_options);
  j["seed"] = p.seed;
  j["max_attempts"] = p.max_attempts;
  return j;
}

ScenarioParams scenario_params_from_json(const Json& j, ScenarioParams p) {
  read_opt(j, "cell_radius", p.cell_radius);
  read_opt(j, "num_cameras", p.num_cameras);
  read_opt(j, "num_objects", p.num_objects);
  if (auto it = j.find("angle_of_view_deg"); it != j.end()) {
    p.angle_of_view = deg_to_rad(it->get<double>());
  }
  read_opt(j, "distance_of_view", p.distance_of_view);
  if (auto it = j.find("best_distance"); it != j.end() && !it->is_null()) {
    p.best_distance = it->get<double>();
  }
  read_opt(j, "bitrates", p.bitrates);
  if (auto it = j.find("weights"); it != j.end()) p.weights = weights_from(*it);
  if (auto it = j.find("qov"); it != j.end()) p.qov_options = qov_from(*it, p.qov_options);
  read_opt(j, "seed", p.seed);
  read_opt(j, "max_attempts", p.max_attempts);
  return p;
}

Json to_json(const SpectrumConfig& c) {
  Json j;
  j["total_rbs"] = c.total_rbs;
  j["sub_bands"] = c.sub_bands;
  j["rbs_per_subband"] = c.rbs_per_subband;
  j["res_per_rb_per_tti"] = c.res_per_rb_per_tti;
  return j;
}

SpectrumConfig spectrum_from_json(const Json& j, SpectrumConfig c) {
  read_opt(j, "sub_bands", c.sub_bands);
  read_opt(j, "rbs_per_subband", c.rbs_per_subband);
  read_opt(j, "res_per_rb_per_tti", c.res_per_rb_per_tti);
  if (j.contains("total_rbs")) {
    c.total_rbs = j["total_rbs"].get<int>();
    // A total with no explicit per-sub-band size splits evenly.
    if (!j.contains("rbs_per_subband") && c.sub_bands > 0) {
      c.rbs_per_subband = c.total_rbs / c.sub_bands;
    }
  } else {
    c.total_rbs = c.sub_bands * c.rbs_per_subband;
  }
  c.validate();
  return c;
}

Json to_json(const ChannelEnv& e) {
  Json j;
  j["tx_power_dbm"] = e.tx_power_dbm;
  j["shadowing_sigma_db"] = e.shadowing_sigma_db;
  j["interference_dbm_per_rb"] = e.interference_dbm_per_rb;
  j["noise_figure_db"] = e.noise_figure_db;
  j["thermal_noise_dbm_per_hz"] = e.thermal_noise_dbm_per_hz;
  j["rb_bandwidth_hz"] = e.rb_bandwidth_hz;
  j["path_loss"] = {{"intercept_db", e.path_loss.intercept_db},
                    {"slope_db", e.path_loss.slope_db},
                    {"min_distance_m", e.path_loss.min_distance_m}};
  j["seed"] = e.seed;
  return j;
}

ChannelEnv env_from_json(const Json& j, ChannelEnv e) {
  read_opt(j, "tx_power_dbm", e.tx_power_dbm);
  read_opt(j, "shadowing_sigma_db", e.shadowing_sigma_db);
  read_opt(j, "interference_dbm_per_rb", e.interference_dbm_per_rb);
  read_opt(j, "noise_figure_db", e.noise_figure_db);
  read_opt(j, "thermal_noise_dbm_per_hz", e.thermal_noise_dbm_per_hz);
  read_opt(j, "rb_bandwidth_hz", e.rb_bandwidth_hz);
  if (auto it = j.find("path_loss"); it != j.end()) {
    read_opt(*it, "intercept_db", e.path_loss.intercept_db);
    read_opt(*it, "slope_db", e.path_loss.slope_db);
    read_opt(*it, "min_distance_m", e.path_loss.min_distance_m);
  }
  read_opt(j, "seed", e.seed);
  return e;
}

Json mcs_table_to_json(const std::vector<McsLevel>& table) {
  Json j = Json::array();
  for (const McsLevel& l : table) {
    j.push_back({{"id", l.id},
                 {"name", l.name},
                 {"bits_per_re", l.bits_per_re},
                 {"sinr_threshold_db", l.sinr_threshold_db}});
  }
  return j;
}

std::vector<McsLevel> mcs_table_from_json(const Json& j) {
  std::vector<McsLevel> table;
  for (const Json& lj : j) {
    table.push_back({require(lj, "id").get<int>(), lj.value("name", std::string{}),
                     require(lj, "bits_per_re").get<double>(),
                     require(lj, "sinr_threshold_db").get<double>()});
  }
  validate_mcs_table(table);
  return table;
}

Json to_json(const ChannelState& c) {
  Json j;
  Json rb = Json::array();
  for (const auto& row : c.rb_req) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v ? Json(*v) : Json(nullptr));
    rb.push_back(std::move(r));
  }
  j["rb_req"] = std::move(rb);
  if (!c.tabular) {
    j["sinr_db"] = c.sinr_db;
    Json mcs = Json::array();
    for (const auto& row : c.mcs) {
      Json r = Json::array();
      for (const auto& v : row) r.push_back(v ? Json(v->id) : Json(nullptr));
      mcs.push_back(std::move(r));
    }
    j["mcs"] = std::move(mcs);
  }
  return j;
}

ChannelState channel_from_json(const Json& j) {
  std::vector<std::vector<std::optional<int>>> rb;
  for (const Json& row : require(j, "rb_req")) {
    std::vector<std::optional<int>> r;
    for (const Json& v : row) {
      r.push_back(v.is_null() ? std::nullopt : std::optional<int>(v.get<int>()));
    }
    rb.push_back(std::move(r));
  }
  return make_tabular_channel(std::move(rb));
}

Json instance_to_json(const ScheduleInstance& inst, const std::optional<ChannelEnv>& env,
                      const std::optional<ScenarioParams>& generator) {
  Json j;
  if (generator) j["generator"] = to_json(*generator);
  j["spectrum"] = to_json(inst.spectrum);
  if (env) j["env"] = to_json(*env);
  j["scenario"] = to_json(inst.scenario);
  j["channel"] = to_json(inst.channel);
  return j;
}

ScheduleInstance instance_from_json(const Json& j) {
  ScheduleInstance inst;
  inst.spectrum = spectrum_from_json(require(j, "spectrum"));
  inst.scenario = scenario_from_json(require(j, "scenario"));
  if (auto it = j.find("env"); it != j.end() && inst.scenario.has_geometry()) {
    const ChannelEnv env = env_from_json(*it);
    const auto table = j.contains("mcs_table") ? mcs_table_from_json(j["mcs_table"])
                                               : default_mcs_table();
    inst.channel = build_channel_state(inst.scenario, inst.spectrum, env, table);
  } else {
    inst.channel = channel_from_json(require(j, "channel"));
  }
  inst.validate();
  return inst;
}

Json to_json(const AllocationMap& a, const Scenario& scenario) {
  Json j;
  j["z"] = objective_value(a, scenario);
  j["used_rbs"] = a.used_rbs();
  j["remaining"] = a.remaining;
  Json cams = Json::array();
  Json flows = Json::array();
  for (const RbRange& r : a.ranges) {
    Json rj;
    rj[r.holder == Holder::kCamera ? "camera" : "flow"] =
        r.holder == Holder::kCamera ? r.owner + 1 : r.owner;
    rj["sub_band"] = r.sub_band + 1;
    rj["first_rb"] = r.first_rb + 1;
    rj["rb_count"] = r.rb_count;
    (r.holder == Holder::kCamera ? cams : flows).push_back(std::move(rj));
  }
  j["cameras"] = std::move(cams);
  if (!flows.empty()) j["flows"] = std::move(flows);
  Json grid = Json::array();
  std::istringstream lines(render_grid(a));
  for (std::string line; std::getline(lines, line);) grid.push_back(line);
  j["grid"] = std::move(grid);
  return j;
}

AllocationMap allocation_from_json(const Json& j, const SpectrumConfig& cfg, int num_cameras) {
  AllocationMap a = AllocationMap::empty(num_cameras, cfg);
  auto read_range = [&](const Json& rj, Holder holder, const char* key) {
    RbRange r;
    r.holder = holder;
    r.owner = require(rj, key).get<int>() - (holder == Holder::kCamera ? 1 : 0);
    r.sub_band = require(rj, "sub_band").get<int>() - 1;
    r.first_rb = require(rj, "first_rb").get<int>() - 1;
    r.rb_count = require(rj, "rb_count").get<int>();
    return r;
  };
  std::vector<int> used(cfg.sub_bands, 0);
  for (const Json& rj : j.value("cameras", Json::array())) {
    const RbRange r = read_range(rj, Holder::kCamera, "camera");
    // Malformed entries are kept as-is so the validator can report them.
    if (r.sub_band >= 0 && r.sub_band < cfg.sub_bands && r.owner >= 0 && r.owner < num_cameras) {
      a.x[r.sub_band][r.owner] = 1;
      used[r.sub_band] += r.rb_count;
    }
    a.ranges.push_back(r);
  }
  for (const Json& rj : j.value("flows", Json::array())) {
    const RbRange r = read_range(rj, Holder::kBackground, "flow");
    if (r.sub_band >= 0 && r.sub_band < cfg.sub_bands) used[r.sub_band] += r.rb_count;
    a.ranges.push_back(r);
  }
  if (j.contains("remaining")) {
    a.remaining = j["remaining"].get<std::vector<int>>();
  } else {
    for (int m = 0; m < cfg.sub_bands; ++m) a.remaining[m] = cfg.rbs_per_subband - used[m];
  }
  return a;
}

Json to_json(const ExactSolution& s, const Scenario& scenario) {
  Json j;
  j["z_star"] = s.z_star;
  j["proven_optimal"] = s.proven_optimal;
  j["nodes_explored"] = s.nodes_explored;
  j["allocation"] = to_json(s.allocation, scenario);
  return j;
}

namespace {

Json opt_index(const std::optional<int>& v) { return v ? Json(*v + 1) : Json(nullptr); }

}  // namespace

Json to_json(const AdmitOutcome& o) {
  Json j;
  j["decision"] = to_string(o.decision);
  j["candidate_subband"] = opt_index(o.candidate_subband);
  j["offload_subband"] = opt_index(o.offload_subband);
  j["k_remove"] = opt_index(o.k_remove);
  j["k_join"] = opt_index(o.k_join);
  j["offload_needed"] = o.offload_needed;
  j["reroute_attempted"] = o.reroute_attempted;
  j["removal_attempted"] = o.removal_attempted;
  j["used_fallback"] = o.used_fallback;
  return j;
}

Json to_json(const BackgroundFlow& f) {
  Json j;
  j["id"] = f.id;
  j["rb_req"] = f.rb_req;
  if (f.assigned_subband) j["assigned_subband"] = *f.assigned_subband + 1;
  if (f.assigned_rbs) j["assigned_rbs"] = *f.assigned_rbs;
  return j;
}

BackgroundFlow flow_from_json(const Json& j) {
  BackgroundFlow f;
  f.id = require(j, "id").get<int>();
  read_opt(j, "rb_req", f.rb_req);
  return f;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace survsched
