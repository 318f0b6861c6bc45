#include "survsched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "survsched/errors.hpp"
#include "survsched/rng.hpp"

namespace survsched {

void validate_camera(const CameraSpec& camera) {
  if (!(camera.angle_of_view > 0.0 && camera.angle_of_view <= 2.0 * kPi)) {
    throw InvalidArgument("camera " + std::to_string(camera.id) +
                          ": angle_of_view must lie in (0, 2pi]");
  }
  if (!(camera.best_distance > 0.0 && camera.best_distance <= camera.distance_of_view)) {
    throw InvalidArgument("camera " + std::to_string(camera.id) +
                          ": need 0 < best_distance <= distance_of_view");
  }
  if (!(camera.tp() > 0.0)) {
    throw InvalidArgument("camera " + std::to_string(camera.id) + ": bitrate must be positive");
  }
}

QoVWeights::QoVWeights(double w_theta, double w_phi, double w_dist)
    : w_theta_(w_theta), w_phi_(w_phi), w_dist_(w_dist) {
  if (w_theta < 0.0 || w_phi < 0.0 || w_dist < 0.0) {
    throw InvalidArgument("QoV weights must be nonnegative");
  }
  if (w_theta == 0.0 && w_phi == 0.0 && w_dist == 0.0) {
    throw InvalidArgument("QoV weights must not all be zero");
  }
}

bool coverage_indicator(const CameraSpec& camera, const TargetObject& object) {
  const double d = distance(camera.position, object.position);
  if (d > camera.distance_of_view) return false;
  if (d == 0.0) return true;
  const double off =
      std::abs(normalize_angle(bearing(camera.position, object.position) - camera.boresight));
  return off <= camera.angle_of_view / 2.0;
}

double facing_angle(const CameraSpec& camera, const TargetObject& object) {
  return normalize_angle(bearing(object.position, camera.position) - object.body_orientation);
}

double quality_of_view(const CameraSpec& camera, const TargetObject& object,
                       const QoVWeights& weights, const QoVOptions& options) {
  if (!coverage_indicator(camera, object)) {
    throw InvalidArgument("quality_of_view: object " + std::to_string(object.id) +
                          " is not covered by camera " + std::to_string(camera.id));
  }
  const double theta = facing_angle(camera, object);
  const double phi = object.elevation_angle;
  const double l = distance(camera.position, object.position);
  const double lb = camera.best_distance;
  const double dist_term = options.distance_term == DistanceTerm::kAsWritten
                               ? 1.0 - std::abs(l / lb)
                               : 1.0 - std::abs(l - lb) / lb;
  const double q = weights.w_theta() * (1.0 - std::abs(theta / kPi)) +
                   weights.w_phi() * (1.0 - std::abs(2.0 * phi / kPi)) +
                   weights.w_dist() * dist_term;
  return options.clamp_at_zero ? std::max(0.0, q) : q;
}

double camera_quality(const CameraSpec& camera, const Scenario& scenario,
                      const QoVWeights& weights, const QoVOptions& options) {
  double q = 0.0;
  for (const TargetObject& object : scenario.objects) {
    if (coverage_indicator(camera, object)) {
      q += quality_of_view(camera, object, weights, options);
    }
  }
  return q;
}

void compute_coverage_and_quality(Scenario& scenario) {
  const std::size_t k_count = scenario.cameras.size();
  const std::size_t n_count = scenario.objects.size();
  scenario.coverage.assign(k_count, std::vector<std::uint8_t>(n_count, 0));
  scenario.qualities.assign(k_count, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    const CameraSpec& camera = scenario.cameras[k];
    for (std::size_t n = 0; n < n_count; ++n) {
      const TargetObject& object = scenario.objects[n];
      if (coverage_indicator(camera, object)) {
        scenario.coverage[k][n] = 1;
        scenario.qualities[k] +=
            quality_of_view(camera, object, scenario.weights, scenario.qov_options);
      }
    }
  }
}

Scenario make_tabular_scenario(std::vector<std::vector<std::uint8_t>> coverage,
                               std::vector<double> qualities) {
  if (coverage.size() != qualities.size()) {
    throw InvalidArgument("coverage has " + std::to_string(coverage.size()) +
                          " rows but there are " + std::to_string(qualities.size()) +
                          " qualities");
  }
  if (coverage.empty()) throw InvalidArgument("scenario needs at least one camera");
  const std::size_t n_count = coverage.front().size();
  for (const auto& row : coverage) {
    if (row.size() != n_count) throw InvalidArgument("ragged coverage matrix");
    for (std::uint8_t c : row) {
      if (c > 1) throw InvalidArgument("coverage entries must be 0 or 1");
    }
  }
  for (double q : qualities) {
    if (!(q >= 0.0)) throw InvalidArgument("qualities must be nonnegative");
  }
  Scenario s;
  s.coverage = std::move(coverage);
  s.qualities = std::move(qualities);
  return s;
}

bool check_feasible(const Scenario& scenario) {
  const int n_count = scenario.num_objects();
  for (int n = 0; n < n_count; ++n) {
    bool covered = false;
    for (int k = 0; k < scenario.num_cameras() && !covered; ++k) covered = scenario.covers(k, n);
    if (!covered) return false;
  }
  return true;
}

namespace {

Point sample_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  const double a = uniform(rng, -kPi, kPi);
  return {r * std::cos(a), r * std::sin(a)};
}

// (-pi, pi]
double sample_orientation(Rng& rng) { return kPi - 2.0 * kPi * uniform01(rng); }

bool all_objects_coverable(const std::vector<CameraSpec>& cameras,
                           const std::vector<TargetObject>& objects) {
  return std::all_of(objects.begin(), objects.end(), [&](const TargetObject& o) {
    return std::any_of(cameras.begin(), cameras.end(),
                       [&](const CameraSpec& c) { return coverage_indicator(c, o); });
  });
}

}  // namespace

Scenario generate_scenario(const ScenarioParams& params) {
  if (params.num_cameras < 1) throw InvalidArgument("generate_scenario: K must be >= 1");
  if (params.num_objects < 1) throw InvalidArgument("generate_scenario: N must be >= 1");
  if (!(params.cell_radius > 0.0)) throw InvalidArgument("generate_scenario: radius must be > 0");
  if (params.bitrates.empty()) throw InvalidArgument("generate_scenario: no bitrate classes");
  if (params.max_attempts < 1) throw InvalidArgument("generate_scenario: max_attempts < 1");
  const double best = params.best_distance.value_or(params.distance_of_view / 2.0);

  Rng rng(params.seed);
  std::vector<CameraSpec> cameras(params.num_cameras);
  std::vector<TargetObject> objects(params.num_objects);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    for (int k = 0; k < params.num_cameras; ++k) {
      CameraSpec& c = cameras[k];
      c.id = k + 1;
      c.position = sample_in_disc(rng, params.cell_radius);
      c.boresight = sample_orientation(rng);
      c.angle_of_view = params.angle_of_view;
      c.distance_of_view = params.distance_of_view;
      c.best_distance = best;
      c.bitrate = params.bitrates[uniform_int(rng, 0, params.bitrates.size() - 1)];
      validate_camera(c);
    }
    for (int n = 0; n < params.num_objects; ++n) {
      TargetObject& o = objects[n];
      o.id = n + 1;
      o.position = sample_in_disc(rng, params.cell_radius);
      o.body_orientation = sample_orientation(rng);
      o.elevation_angle = 0.0;
    }
    if (!all_objects_coverable(cameras, objects)) continue;

    Scenario s;
    s.cell_radius = params.cell_radius;
    s.cameras = std::move(cameras);
    s.objects = std::move(objects);
    s.weights = params.weights;
    s.qov_options = params.qov_options;
    compute_coverage_and_quality(s);
    return s;
  }
  throw FeasibilityExhausted("generate_scenario: no coverable instance after " +
                             std::to_string(params.max_attempts) + " attempts");
}

Scenario rotate_scenario(const Scenario& scenario, double angle) {
  Scenario out = scenario;
  for (CameraSpec& c : out.cameras) {
    c.position = rotate(c.position - scenario.base_station, angle) + scenario.base_station;
    c.boresight = normalize_angle(c.boresight + angle);
  }
  for (TargetObject& o : out.objects) {
    o.position = rotate(o.position - scenario.base_station, angle) + scenario.base_station;
    o.body_orientation = normalize_angle(o.body_orientation + angle);
  }
  if (out.has_geometry()) compute_coverage_and_quality(out);
  return out;
}

}  // namespace survsched
