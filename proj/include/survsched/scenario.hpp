#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "survsched/geometry.hpp"

namespace survsched {

struct TargetObject {
  int id = 0;  // 1-based
  Point position;
  double body_orientation = 0.0;  // facing direction, (-pi, pi]
  double elevation_angle = 0.0;   // phi; 0 in 2-D scenarios

  friend bool operator==(const TargetObject&, const TargetObject&) = default;
};

struct CameraSpec {
  int id = 0;  // 1-based
  Point position;
  double boresight = 0.0;
  double angle_of_view = 0.0;  // full sector width, radians
  double distance_of_view = 0.0;
  double best_distance = 0.0;
  double bitrate = 0.0;  // bits per second

  // Bits per 1 ms TTI.
  double tp() const { return bitrate * 1e-3; }

  friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

// Throws InvalidArgument on a camera that breaks its invariants.
void validate_camera(const CameraSpec& camera);

class QoVWeights {
 public:
  // Defaults to the 2-D evaluation weights (theta, phi, distance) = (1, 0, 1).
  QoVWeights() = default;
  // Throws InvalidArgument when any weight is negative or all are zero.
  QoVWeights(double w_theta, double w_phi, double w_dist);

  double w_theta() const { return w_theta_; }
  double w_phi() const { return w_phi_; }
  double w_dist() const { return w_dist_; }
  double sum() const { return w_theta_ + w_phi_ + w_dist_; }

  friend bool operator==(const QoVWeights&, const QoVWeights&) = default;

 private:
  double w_theta_ = 1.0;
  double w_phi_ = 0.0;
  double w_dist_ = 1.0;
};

enum class DistanceTerm {
  kAsWritten,   // 1 - |L / L_B|
  kPeakAtBest,  // 1 - |L - L_B| / L_B
};

struct QoVOptions {
  bool clamp_at_zero = true;
  DistanceTerm distance_term = DistanceTerm::kAsWritten;

  friend bool operator==(const QoVOptions&, const QoVOptions&) = default;
};

// Sector model: within distance_of_view and within angle_of_view / 2 of the
// boresight.
bool coverage_indicator(const CameraSpec& camera, const TargetObject& object);

// Signed angle between the object's facing direction and the direction from
// the object toward the camera; 0 when the subject faces the camera.
double facing_angle(const CameraSpec& camera, const TargetObject& object);

// Per-object quality of view. Throws InvalidArgument for an uncovered object.
double quality_of_view(const CameraSpec& camera, const TargetObject& object,
                       const QoVWeights& weights, const QoVOptions& options = {});

struct Scenario {
  double cell_radius = 0.0;
  Point base_station;
  std::vector<CameraSpec> cameras;
  std::vector<TargetObject> objects;
  QoVWeights weights;
  QoVOptions qov_options;
  // coverage[k][n]; K x N.
  std::vector<std::vector<std::uint8_t>> coverage;
  std::vector<double> qualities;

  int num_cameras() const { return static_cast<int>(qualities.size()); }
  int num_objects() const {
    return coverage.empty() ? static_cast<int>(objects.size())
                            : static_cast<int>(coverage.front().size());
  }
  bool covers(int k, int n) const { return coverage[k][n] != 0; }
  // True when coverage and qualities were derived from camera/object geometry
  // rather than supplied as tables.
  bool has_geometry() const { return !cameras.empty(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Fills coverage and qualities from the geometry.
void compute_coverage_and_quality(Scenario& scenario);

// Builds a geometry-free scenario from explicit coverage sets and qualities.
// Throws InvalidArgument on ragged or negative input.
Scenario make_tabular_scenario(std::vector<std::vector<std::uint8_t>> coverage,
                               std::vector<double> qualities);

double camera_quality(const CameraSpec& camera, const Scenario& scenario,
                      const QoVWeights& weights, const QoVOptions& options = {});

// Every object is covered by at least one camera.
bool check_feasible(const Scenario& scenario);

struct ScenarioParams {
  double cell_radius = 250.0;
  int num_cameras = 50;
  int num_objects = 50;
  double angle_of_view = deg_to_rad(150.0);
  double distance_of_view = 100.0;
  // Defaults to distance_of_view / 2 when absent.
  std::optional<double> best_distance;
  // Each camera draws one class uniformly.
  std::vector<double> bitrates = {512e3, 1e6, 2e6};
  QoVWeights weights;
  QoVOptions qov_options;
  std::uint64_t seed = 1;
  int max_attempts = 1000;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

// Samples cameras and objects uniformly over the disc and resamples the whole
// instance until every object is covered. Throws InvalidArgument on bad
// parameters and FeasibilityExhausted after max_attempts.
Scenario generate_scenario(const ScenarioParams& params);

// Rotates the full scene about the base station.
Scenario rotate_scenario(const Scenario& scenario, double angle);

}  // namespace survsched
