#include "survsched/channel.hpp"

#include <cmath>

#include "survsched/errors.hpp"
#include "survsched/rng.hpp"

namespace survsched {

std::vector<McsLevel> default_mcs_table() {
  return {
      {1, "QPSK 1/3", 2.0 / 3.0, -1.5},  {2, "QPSK 1/2", 1.0, 1.0},
      {3, "QPSK 2/3", 4.0 / 3.0, 3.5},   {4, "QPSK 3/4", 1.5, 5.0},
      {5, "16QAM 1/2", 2.0, 8.0},        {6, "16QAM 2/3", 8.0 / 3.0, 11.0},
      {7, "16QAM 3/4", 3.0, 13.0},
  };
}

void validate_mcs_table(const std::vector<McsLevel>& table) {
  if (table.empty()) throw InvalidArgument("MCS table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].bits_per_re > 0.0)) throw InvalidArgument("MCS bits_per_re must be positive");
    if (i == 0) continue;
    if (!(table[i].id > table[i - 1].id && table[i].bits_per_re > table[i - 1].bits_per_re &&
          table[i].sinr_threshold_db > table[i - 1].sinr_threshold_db)) {
      throw InvalidArgument("MCS table must be strictly increasing in id, bits and threshold");
    }
  }
}

void SpectrumConfig::validate() const {
  if (total_rbs <= 0 || sub_bands <= 0 || rbs_per_subband <= 0 || res_per_rb_per_tti <= 0) {
    throw InvalidArgument("spectrum config fields must be positive");
  }
  if (total_rbs != sub_bands * rbs_per_subband) {
    throw InvalidArgument("spectrum config: total_rbs != sub_bands * rbs_per_subband");
  }
}

double path_loss_db(double distance_m, const PathLossModel& model) {
  const double d = std::max(distance_m, model.min_distance_m);
  return model.intercept_db + model.slope_db * std::log10(d / 1000.0);
}

double noise_floor_dbm_per_rb(const ChannelEnv& env) {
  return env.thermal_noise_dbm_per_hz + 10.0 * std::log10(env.rb_bandwidth_hz);
}

double shadowing_db(const ChannelEnv& env, int camera_id, int sub_band) {
  if (env.shadowing_sigma_db == 0.0) return 0.0;
  Rng rng(derive_seed({env.seed, static_cast<std::uint64_t>(camera_id),
                       static_cast<std::uint64_t>(sub_band)}));
  return env.shadowing_sigma_db * standard_normal(rng);
}

namespace {

double interference_dbm(const ChannelEnv& env, int sub_band) {
  const auto& i = env.interference_dbm_per_rb;
  if (i.empty()) return -std::numeric_limits<double>::infinity();
  if (i.size() == 1) return i.front();
  return i.at(sub_band);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

}  // namespace

double sinr_db(const CameraSpec& camera, Point base_station, int sub_band,
               const ChannelEnv& env) {
  const double rx_dbm = env.tx_power_dbm -
                        path_loss_db(distance(camera.position, base_station), env.path_loss) -
                        shadowing_db(env, camera.id, sub_band);
  const double noise_mw = dbm_to_mw(noise_floor_dbm_per_rb(env) + env.noise_figure_db);
  const double total_mw = noise_mw + dbm_to_mw(interference_dbm(env, sub_band));
  return rx_dbm - 10.0 * std::log10(total_mw);
}

std::optional<McsLevel> select_mcs(double sinr, const std::vector<McsLevel>& table) {
  std::optional<McsLevel> best;
  for (const McsLevel& level : table) {
    if (level.sinr_threshold_db <= sinr) best = level;
  }
  return best;
}

int rb_requirement(double tp_bits, const McsLevel& mcs, const SpectrumConfig& cfg) {
  if (!(tp_bits > 0.0)) throw InvalidArgument("rb_requirement: tp must be positive");
  const double bits_per_rb = mcs.bits_per_re * cfg.res_per_rb_per_tti;
  const double ratio = tp_bits / bits_per_rb;
  // Guard the ceiling against representation error in bits_per_re
  // (e.g. 2/3 * 168 is not exactly 112).
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) < 1e-9) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(ratio));
}

ChannelState build_channel_state(const Scenario& scenario, const SpectrumConfig& cfg,
                                 const ChannelEnv& env, const std::vector<McsLevel>& table) {
  cfg.validate();
  validate_mcs_table(table);
  if (!scenario.has_geometry()) {
    throw InvalidArgument("build_channel_state needs camera geometry");
  }
  const int m_count = cfg.sub_bands;
  const int k_count = scenario.num_cameras();
  ChannelState cs;
  cs.sinr_db.assign(m_count, std::vector<double>(k_count, 0.0));
  cs.mcs.assign(m_count, std::vector<std::optional<McsLevel>>(k_count));
  cs.rb_req.assign(m_count, std::vector<std::optional<int>>(k_count));
  for (int m = 0; m < m_count; ++m) {
    for (int k = 0; k < k_count; ++k) {
      const CameraSpec& camera = scenario.cameras[k];
      const double s = sinr_db(camera, scenario.base_station, m, env);
      cs.sinr_db[m][k] = s;
      cs.mcs[m][k] = select_mcs(s, table);
      if (cs.mcs[m][k]) cs.rb_req[m][k] = rb_requirement(camera.tp(), *cs.mcs[m][k], cfg);
    }
  }
  return cs;
}

ChannelState make_tabular_channel(std::vector<std::vector<std::optional<int>>> rb_req) {
  if (rb_req.empty()) throw InvalidArgument("channel table needs at least one sub-band");
  const std::size_t k_count = rb_req.front().size();
  for (const auto& row : rb_req) {
    if (row.size() != k_count) throw InvalidArgument("ragged rb_req table");
    for (const auto& r : row) {
      if (r && *r <= 0) throw InvalidArgument("rb_req entries must be positive");
    }
  }
  ChannelState cs;
  cs.tabular = true;
  cs.rb_req = std::move(rb_req);
  return cs;
}

}  // namespace survsched
