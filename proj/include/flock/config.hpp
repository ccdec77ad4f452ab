#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace flock {

// Which acceleration rule drives the flock.
//   kPosVel:               cohesion-separation plus velocity-difference alignment
//   kPosition:             position-only alignment with the threshold floor k*|N|
//   kPositionNoThreshold:  position-only alignment with the bare |N|/t weight
enum class ModelKind { kPosVel, kPosition, kPositionNoThreshold };

const char* to_string(ModelKind kind);
std::optional<ModelKind> model_from_string(std::string_view name);

// Snapshot times used when a run does not set its own: the quarter points of
// [0, t_end], deduplicated.
std::vector<double> default_snapshot_times(double t_end);

// Full description of one experiment. Defaults reproduce the reference
// scenario: 50 agents in a 25 x 25 m box, interaction radius 7.5 m, speed cap
// 5 m/s reached in 1 s, threshold coefficient 0.1, 100 s at dt = 0.01.
struct SimConfig {
  ModelKind model = ModelKind::kPosition;
  int n = 50;                // agent count, >= 2
  int m = 2;                 // spatial dimension, >= 1
  double r = 7.5;            // interaction radius, m
  double v_max = 5.0;        // maximum speed, m/s
  double t_vmax = 1.0;       // time to reach v_max, s
  double k = 0.1;            // threshold coefficient, 1/s (position model only)
  double dt = 0.01;          // integration step, s
  double t_end = 100.0;      // duration, s
  std::uint64_t seed = 0;
  double init_box = 25.0;    // side of the initial hypercube, m
  double v0_max = 1.0;       // maximum initial speed, m/s
  std::vector<double> snapshot_times = default_snapshot_times(100.0);
  int metrics_stride = 1;    // emit a metrics row every j-th step
  int trace_stride = 0;      // emit trajectory rows every j-th step; 0 = off

  // Acceleration magnitude cap, m/s^2.
  double accel_limit() const { return v_max / t_vmax; }

  std::int64_t step_count() const {
    return static_cast<std::int64_t>(std::llround(t_end / dt));
  }

  // Throws ConfigError naming the offending key.
  void validate() const;
};

}  // namespace flock
