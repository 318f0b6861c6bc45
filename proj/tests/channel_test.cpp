#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "survsched/channel.hpp"
#include "survsched/errors.hpp"

using namespace survsched;

namespace {

McsLevel level(const std::string& name) {
  for (const McsLevel& l : default_mcs_table()) {
    if (l.name == name) return l;
  }
  FAIL("no level " << name);
  return {};
}

CameraSpec camera_at(double x, double y, int id = 1) {
  CameraSpec c;
  c.id = id;
  c.position = {x, y};
  c.angle_of_view = deg_to_rad(150.0);
  c.distance_of_view = 100.0;
  c.best_distance = 50.0;
  c.bitrate = 1e6;
  return c;
}

ChannelEnv quiet_env() {
  ChannelEnv env;
  env.shadowing_sigma_db = 0.0;
  env.interference_dbm_per_rb.clear();
  env.noise_figure_db = 0.0;
  return env;
}

}  // namespace

TEST_CASE("path loss") {
  CHECK(path_loss_db(1000.0) == doctest::Approx(128.1));
  CHECK(path_loss_db(100.0) == doctest::Approx(90.5));
  CHECK(std::abs(path_loss_db(250.0) - 105.46) < 0.01);
  CHECK(path_loss_db(1.0) == path_loss_db(10.0));
}

TEST_CASE("sinr closed form") {
  const ChannelEnv env = quiet_env();
  CHECK(noise_floor_dbm_per_rb(env) == doctest::Approx(-121.447).epsilon(1e-5));
  const double s = sinr_db(camera_at(250.0, 0.0), {0.0, 0.0}, 0, env);
  CHECK(std::abs(s - 39.99) < 0.05);
}

TEST_CASE("interference lowers sinr") {
  ChannelEnv env = quiet_env();
  env.interference_dbm_per_rb = {-110.0};
  const double base = sinr_db(camera_at(200.0, 0.0), {0, 0}, 0, env);
  env.interference_dbm_per_rb = {-110.0 + 10.0 * std::log10(2.0)};
  CHECK(sinr_db(camera_at(200.0, 0.0), {0, 0}, 0, env) < base);
  env.interference_dbm_per_rb = {-110.0, -100.0};
  CHECK(sinr_db(camera_at(200.0, 0.0), {0, 0}, 1, env) <
        sinr_db(camera_at(200.0, 0.0), {0, 0}, 0, env));
}

TEST_CASE("shadowing is a pure function of seed and cell") {
  ChannelEnv env;
  env.seed = 9;
  CHECK(shadowing_db(env, 3, 1) == shadowing_db(env, 3, 1));
  CHECK(shadowing_db(env, 3, 1) != shadowing_db(env, 3, 2));
  env.seed = 10;
  const double other = shadowing_db(env, 3, 1);
  env.seed = 9;
  CHECK(other != shadowing_db(env, 3, 1));
}

TEST_CASE("mcs selection") {
  const auto table = default_mcs_table();
  CHECK(select_mcs(40.0, table)->name == "16QAM 3/4");
  CHECK_FALSE(select_mcs(-1.6, table).has_value());
  CHECK(select_mcs(8.0, table)->name == "16QAM 1/2");
  CHECK(select_mcs(7.999, table)->name == "QPSK 3/4");
  CHECK(select_mcs(-1.5, table)->name == "QPSK 1/3");
  validate_mcs_table(table);
  auto bad = table;
  std::swap(bad[0], bad[1]);
  CHECK_THROWS_AS(validate_mcs_table(bad), InvalidArgument);
  CHECK_THROWS_AS(validate_mcs_table({}), InvalidArgument);
}

TEST_CASE("rb requirement") {
  const SpectrumConfig cfg;
  CHECK(rb_requirement(168.0, level("QPSK 1/2"), cfg) == 1);
  CHECK(rb_requirement(2000.0, level("QPSK 1/2"), cfg) == 12);
  CHECK(rb_requirement(2000.0, level("16QAM 3/4"), cfg) == 4);
  CHECK(rb_requirement(112.0, level("QPSK 1/3"), cfg) == 1);
  CHECK(rb_requirement(113.0, level("QPSK 1/3"), cfg) == 2);
  CHECK_THROWS_AS(rb_requirement(0.0, level("QPSK 1/2"), cfg), InvalidArgument);
  CHECK_THROWS_AS(rb_requirement(-5.0, level("QPSK 1/2"), cfg), InvalidArgument);
}

TEST_CASE("ceiling identity and monotonicity in sinr") {
  const SpectrumConfig cfg;
  const auto table = default_mcs_table();
  for (int tp = 1; tp <= 4000; tp += 7) {
    int prev = std::numeric_limits<int>::max();
    for (const McsLevel& l : table) {
      const int r = rb_requirement(tp, l, cfg);
      const double bits_per_rb = l.bits_per_re * cfg.res_per_rb_per_tti;
      CHECK(r * bits_per_rb >= tp - 1e-9);
      CHECK((r - 1) * bits_per_rb < tp);
      CHECK(r <= prev);
      prev = r;
    }
  }
}

TEST_CASE("spectrum config") {
  SpectrumConfig{}.validate();
  CHECK(SpectrumConfig::uniform(3, 5).total_rbs == 15);
  CHECK_THROWS_AS((SpectrumConfig{47, 4, 12, 168}.validate()), InvalidArgument);
  CHECK_THROWS_AS((SpectrumConfig{0, 0, 12, 168}.validate()), InvalidArgument);
}

TEST_CASE("table-driven state loads exactly") {
  // Per-camera columns (sb1, sb2, sb3).
  const std::vector<std::vector<int>> per_camera = {{5, 3, 5}, {4, 5, 3}, {4, 4, 4}, {3, 4, 3},
                                                    {4, 3, 5}, {2, 2, 2}, {4, 4, 4}};
  const ScheduleInstance inst = fixtures::worked_example();
  REQUIRE(inst.channel.sub_bands() == 3);
  REQUIRE(inst.channel.num_cameras() == 7);
  CHECK(inst.channel.tabular);
  for (int k = 0; k < 7; ++k) {
    for (int m = 0; m < 3; ++m) CHECK(inst.channel.rb(m, k) == per_camera[k][m]);
  }
  CHECK_THROWS_AS(make_tabular_channel({{1, 2}, {1}}), InvalidArgument);
  CHECK_THROWS_AS(make_tabular_channel({{0}}), InvalidArgument);
  const ChannelState partial = make_tabular_channel({{std::nullopt, 2}});
  CHECK_FALSE(partial.can_use(0, 0));
  CHECK(partial.rb(0, 0) == ChannelState::kNoFit);
}

TEST_CASE("quiet small cell admits every camera at the top level") {
  Scenario s;
  for (int k = 0; k < 20; ++k) {
    const double a = 0.3 * k;
    const double d = 12.5 * (k + 1);
    s.cameras.push_back(camera_at(d * std::cos(a), d * std::sin(a), k + 1));
  }
  s.objects.push_back(TargetObject{1, {0, 0}, 0, 0});
  compute_coverage_and_quality(s);
  ChannelEnv env = quiet_env();
  env.noise_figure_db = 5.0;
  const ChannelState cs = build_channel_state(s, SpectrumConfig{}, env);
  for (int m = 0; m < 4; ++m) {
    for (int k = 0; k < 20; ++k) {
      REQUIRE(cs.can_use(m, k));
      CHECK(cs.mcs[m][k]->id == 7);
      CHECK(cs.rb(m, k) == 2);  // 1000 bits over 504 bits/RB
    }
  }
}

TEST_CASE("channel state is deterministic and hides unusable cells") {
  ScenarioParams p;
  p.seed = 5;
  const Scenario s = generate_scenario(p);
  ChannelEnv env;
  env.seed = 77;
  const ChannelState a = build_channel_state(s, SpectrumConfig{}, env);
  const ChannelState b = build_channel_state(s, SpectrumConfig{}, env);
  CHECK(a == b);
  for (int m = 0; m < 4; ++m) {
    for (int k = 0; k < s.num_cameras(); ++k) {
      if (!a.can_use(m, k)) {
        CHECK(a.sinr_db[m][k] < default_mcs_table().front().sinr_threshold_db);
      }
    }
  }
}
