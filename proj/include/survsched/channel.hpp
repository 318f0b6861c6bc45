#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "survsched/scenario.hpp"

namespace survsched {

struct McsLevel {
  int id = 0;  // 1-based ordinal
  std::string name;
  double bits_per_re = 0.0;
  double sinr_threshold_db = 0.0;

  friend bool operator==(const McsLevel&, const McsLevel&) = default;
};

// QPSK 1/3, 1/2, 2/3, 3/4 and 16QAM 1/2, 2/3, 3/4.
std::vector<McsLevel> default_mcs_table();

// Throws InvalidArgument unless the table is non-empty and both bits_per_re
// and sinr_threshold_db strictly increase with id.
void validate_mcs_table(const std::vector<McsLevel>& table);

struct SpectrumConfig {
  int total_rbs = 48;
  int sub_bands = 4;
  int rbs_per_subband = 12;
  // 2 slots x 7 symbols x 12 subcarriers per 1 ms TTI.
  int res_per_rb_per_tti = 168;

  // Throws InvalidArgument unless total_rbs == sub_bands * rbs_per_subband
  // and every field is positive.
  void validate() const;

  static SpectrumConfig uniform(int sub_bands, int rbs_per_subband) {
    return {sub_bands * rbs_per_subband, sub_bands, rbs_per_subband, 168};
  }

  friend bool operator==(const SpectrumConfig&, const SpectrumConfig&) = default;
};

struct PathLossModel {
  double intercept_db = 128.1;
  double slope_db = 37.6;  // per decade of km
  double min_distance_m = 10.0;

  friend bool operator==(const PathLossModel&, const PathLossModel&) = default;
};

struct ChannelEnv {
  double tx_power_dbm = 24.0;
  double shadowing_sigma_db = 8.0;
  // Per-RB inter-cell interference for each sub-band; a single entry applies
  // to every sub-band, an empty vector means none.
  std::vector<double> interference_dbm_per_rb = {-110.0};
  double noise_figure_db = 5.0;
  double thermal_noise_dbm_per_hz = -174.0;
  double rb_bandwidth_hz = 180000.0;
  PathLossModel path_loss;
  std::uint64_t seed = 1;

  friend bool operator==(const ChannelEnv&, const ChannelEnv&) = default;
};

double path_loss_db(double distance_m, const PathLossModel& model = {});

// Thermal noise per RB before the noise figure.
double noise_floor_dbm_per_rb(const ChannelEnv& env);

// Log-normal shadowing sample for (camera id, sub-band); a pure function of
// env.seed so every cell can be evaluated independently.
double shadowing_db(const ChannelEnv& env, int camera_id, int sub_band);

double sinr_db(const CameraSpec& camera, Point base_station, int sub_band,
               const ChannelEnv& env);

// Highest level whose threshold <= sinr (inclusive); nullopt below the table.
std::optional<McsLevel> select_mcs(double sinr_db, const std::vector<McsLevel>& table);

// ceil(tp / (bits_per_re * res_per_rb_per_tti)). Throws InvalidArgument when
// tp <= 0.
int rb_requirement(double tp_bits, const McsLevel& mcs, const SpectrumConfig& cfg);

struct ChannelState {
  // Indexed [sub_band][camera]. Tabular states carry rb_req only and leave
  // sinr_db and mcs empty.
  std::vector<std::vector<double>> sinr_db;
  std::vector<std::vector<std::optional<McsLevel>>> mcs;
  std::vector<std::vector<std::optional<int>>> rb_req;
  bool tabular = false;

  int sub_bands() const { return static_cast<int>(rb_req.size()); }
  int num_cameras() const { return rb_req.empty() ? 0 : static_cast<int>(rb_req.front().size()); }
  bool can_use(int m, int k) const { return rb_req[m][k].has_value(); }
  // Requirement with absent entries mapped to a value that never fits.
  int rb(int m, int k) const { return rb_req[m][k].value_or(kNoFit); }

  static constexpr int kNoFit = std::numeric_limits<int>::max();

  friend bool operator==(const ChannelState&, const ChannelState&) = default;
};

ChannelState build_channel_state(const Scenario& scenario, const SpectrumConfig& cfg,
                                 const ChannelEnv& env,
                                 const std::vector<McsLevel>& table = default_mcs_table());

// Hand-built state from an M x K requirement table (nullopt = cannot transmit).
// Throws InvalidArgument on ragged input or non-positive requirements.
ChannelState make_tabular_channel(std::vector<std::vector<std::optional<int>>> rb_req);

}  // namespace survsched
