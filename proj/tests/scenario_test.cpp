#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "survsched/errors.hpp"
#include "survsched/scenario.hpp"

using namespace survsched;

namespace {

CameraSpec camera_at_origin() {
  CameraSpec c;
  c.id = 1;
  c.boresight = 0.0;
  c.angle_of_view = deg_to_rad(150.0);
  c.distance_of_view = 100.0;
  c.best_distance = 50.0;
  c.bitrate = 512e3;
  return c;
}

TargetObject object_at(double bearing_deg, double dist, double facing = 0.0) {
  const double a = deg_to_rad(bearing_deg);
  TargetObject o;
  o.id = 1;
  o.position = {dist * std::cos(a), dist * std::sin(a)};
  o.body_orientation = facing;
  return o;
}

// Object placed so the camera sees it at `theta` from its facing direction.
TargetObject facing_object(double dist, double theta) {
  TargetObject o = object_at(0.0, dist);
  // Object -> camera direction is pi; facing = pi - theta.
  o.body_orientation = normalize_angle(kPi - theta);
  return o;
}

}  // namespace

TEST_CASE("coverage sector") {
  const CameraSpec c = camera_at_origin();
  CHECK_FALSE(coverage_indicator(c, object_at(0.0, 200.0)));
  CHECK(coverage_indicator(c, object_at(0.0, 50.0)));
  CHECK_FALSE(coverage_indicator(c, object_at(80.0, 50.0)));
  CHECK(coverage_indicator(c, object_at(74.0, 50.0)));
  CHECK(coverage_indicator(c, object_at(-74.0, 99.9)));
  CHECK(coverage_indicator(c, object_at(0.0, 100.0)));
}

TEST_CASE("quality of view values") {
  const CameraSpec c = camera_at_origin();
  const QoVWeights w;
  CHECK(quality_of_view(c, facing_object(50.0, 0.0), w) == doctest::Approx(1.0));
  CHECK(quality_of_view(c, facing_object(25.0, kPi / 2), w) == doctest::Approx(1.0));
  CHECK(quality_of_view(c, facing_object(50.0, kPi), w) == doctest::Approx(0.0));
  CHECK(quality_of_view(c, facing_object(25.0, -kPi / 2), w) == doctest::Approx(1.0));
  CHECK_THROWS_AS(quality_of_view(c, object_at(0.0, 150.0), w), InvalidArgument);
}

TEST_CASE("distance term beyond best distance is clamped") {
  const CameraSpec c = camera_at_origin();
  const TargetObject o = facing_object(90.0, 0.9 * kPi);  // 0.1 + (1 - 1.8) < 0
  CHECK(quality_of_view(c, o, QoVWeights{}) == 0.0);
  QoVOptions raw;
  raw.clamp_at_zero = false;
  CHECK(quality_of_view(c, o, QoVWeights{}, raw) == doctest::Approx(-0.7));
  QoVOptions peak;
  peak.distance_term = DistanceTerm::kPeakAtBest;
  CHECK(quality_of_view(c, facing_object(50.0, 0.0), QoVWeights{}, peak) ==
        doctest::Approx(2.0));
}

TEST_CASE("camera quality sums covered objects only") {
  Scenario s;
  s.cameras = {camera_at_origin()};
  s.objects = {facing_object(50.0, 0.0), facing_object(25.0, kPi / 2), object_at(180.0, 50.0)};
  s.objects[1].id = 2;
  s.objects[2].id = 3;
  CHECK(camera_quality(s.cameras[0], s, QoVWeights{}) == doctest::Approx(2.0));

  Scenario far;
  far.cameras = {camera_at_origin()};
  far.objects = {object_at(0.0, 500.0)};
  CHECK(camera_quality(far.cameras[0], far, QoVWeights{}) == 0.0);
}

TEST_CASE("weights invariant") {
  CHECK_THROWS_AS(QoVWeights(0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(QoVWeights(-1, 0, 1), InvalidArgument);
  const QoVWeights w;
  CHECK(w.w_theta() == 1.0);
  CHECK(w.w_phi() == 0.0);
  CHECK(w.w_dist() == 1.0);
}

TEST_CASE("check_feasible") {
  Scenario ok = make_tabular_scenario({{1, 0}, {0, 1}}, {1.0, 1.0});
  CHECK(check_feasible(ok));
  Scenario gap = make_tabular_scenario({{1, 0}, {1, 0}}, {1.0, 1.0});
  CHECK_FALSE(check_feasible(gap));
  CHECK(check_feasible(fixtures::worked_example().scenario));
  CHECK_THROWS_AS(make_tabular_scenario({{1, 0}, {1}}, {1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(make_tabular_scenario({{1}}, {-1.0}), InvalidArgument);
}

TEST_CASE("generator determinism and coverage") {
  ScenarioParams p;
  p.seed = 42;
  const Scenario a = generate_scenario(p);
  const Scenario b = generate_scenario(p);
  CHECK(a == b);
  CHECK(check_feasible(a));
  CHECK(a.num_cameras() == 50);
  CHECK(a.num_objects() == 50);
  p.seed = 43;
  CHECK_FALSE(generate_scenario(p) == a);
  for (const CameraSpec& c : a.cameras) {
    CHECK(std::hypot(c.position.x, c.position.y) <= p.cell_radius);
    CHECK(c.boresight > -kPi);
    CHECK(c.boresight <= kPi);
    CHECK(c.best_distance == doctest::Approx(50.0));
  }
}

TEST_CASE("generator rejects bad parameters") {
  ScenarioParams p;
  p.num_cameras = 0;
  CHECK_THROWS_AS(generate_scenario(p), InvalidArgument);
  p = {};
  p.num_objects = 0;
  CHECK_THROWS_AS(generate_scenario(p), InvalidArgument);
  p = {};
  p.num_cameras = 1;
  p.num_objects = 80;
  p.max_attempts = 3;
  CHECK_THROWS_AS(generate_scenario(p), FeasibilityExhausted);
}

TEST_CASE("properties over generated scenes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScenarioParams p;
    p.seed = seed;
    p.num_cameras = 60;
    p.num_objects = 30;
    p.angle_of_view = deg_to_rad(180.0);
    p.distance_of_view = 130.0;
    Scenario s;
    try {
      s = generate_scenario(p);
    } catch (const FeasibilityExhausted&) {
      continue;
    }
    CAPTURE(seed);

    // rotation invariance
    const Scenario r = rotate_scenario(s, 1.234 * static_cast<double>(seed));
    CHECK(r.coverage == s.coverage);
    for (int k = 0; k < s.num_cameras(); ++k) {
      CHECK(r.qualities[k] == doctest::Approx(s.qualities[k]).epsilon(1e-9));
      CHECK(std::hypot(r.cameras[k].position.x, r.cameras[k].position.y) ==
            doctest::Approx(std::hypot(s.cameras[k].position.x, s.cameras[k].position.y)));
    }

    for (int k = 0; k < s.num_cameras(); ++k) {
      const CameraSpec& c = s.cameras[k];
      double brute = 0.0;
      bool any = false;
      for (int n = 0; n < s.num_objects(); ++n) {
        if (!coverage_indicator(c, s.objects[n])) continue;
        any = true;
        const double q = quality_of_view(c, s.objects[n], s.weights);
        CHECK(q >= 0.0);
        CHECK(q <= s.weights.sum() + 1e-12);
        brute += q;
        // monotone coverage
        CameraSpec wider = c;
        wider.angle_of_view = std::min(2.0 * kPi, c.angle_of_view + 0.3);
        wider.distance_of_view = c.distance_of_view + 10.0;
        CHECK(coverage_indicator(wider, s.objects[n]));
      }
      CHECK(s.qualities[k] == doctest::Approx(brute));
      if (!any) CHECK(s.qualities[k] == 0.0);
    }
  }
}
