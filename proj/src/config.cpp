#include "flock/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flock/errors.hpp"

namespace flock {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPosVel:
      return "pos_vel";
    case ModelKind::kPosition:
      return "position";
    case ModelKind::kPositionNoThreshold:
      return "position_no_threshold";
  }
  return "?";
}

std::optional<ModelKind> model_from_string(std::string_view name) {
  if (name == "pos_vel") return ModelKind::kPosVel;
  if (name == "position") return ModelKind::kPosition;
  if (name == "position_no_threshold") return ModelKind::kPositionNoThreshold;
  return std::nullopt;
}

std::vector<double> default_snapshot_times(double t_end) {
  std::vector<double> times = {0.0, 0.25 * t_end, 0.5 * t_end, 0.75 * t_end, t_end};
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

void require_finite(const std::string& key, double v) {
  if (!std::isfinite(v)) fail(key, "must be finite");
}

}  // namespace

void SimConfig::validate() const {
  if (n < 2) fail("n", "need at least 2 agents");
  if (m < 1) fail("m", "dimension must be >= 1");
  require_finite("r", r);
  if (r <= 0.0) fail("r", "interaction radius must be > 0");
  require_finite("v_max", v_max);
  if (v_max <= 0.0) fail("v_max", "maximum speed must be > 0");
  require_finite("t_vmax", t_vmax);
  if (t_vmax <= 0.0) fail("t_vmax", "time to reach v_max must be > 0");
  require_finite("k", k);
  if (k <= 0.0) fail("k", "threshold coefficient must be > 0");
  require_finite("dt", dt);
  if (dt <= 0.0) fail("dt", "integration step must be > 0");
  require_finite("t_end", t_end);
  if (t_end < 0.0) fail("t_end", "duration must be >= 0");
  if (t_end > 0.0 && dt > t_end) fail("dt", "integration step exceeds t_end");
  require_finite("init_box", init_box);
  if (init_box <= 0.0) fail("init_box", "initial box side must be > 0");
  require_finite("v0_max", v0_max);
  if (v0_max < 0.0) fail("v0_max", "maximum initial speed must be >= 0");
  for (double t : snapshot_times) {
    require_finite("snapshot_times", t);
    if (t < 0.0 || t > t_end) fail("snapshot_times", "time outside [0, t_end]");
  }
  if (metrics_stride < 1) fail("metrics_stride", "stride must be >= 1");
  if (trace_stride < 0) fail("trace_stride", "stride must be >= 0");
}

}  // namespace flock
