#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "flock/config.hpp"
#include "flock/metrics.hpp"
#include "flock/state.hpp"

namespace flock {

// Fixed-step schedule. Time at step q is q*dt exactly; no accumulated sums.
struct StepSchedule {
  double dt = 0.01;
  std::int64_t step_count = 0;
  std::int64_t current_step = 0;

  static StepSchedule from_config(const SimConfig& config) {
    return {config.dt, config.step_count(), 0};
  }

  double time_at(std::int64_t q) const { return static_cast<double>(q) * dt; }
};

// Magnitude clamp: directions are preserved, ||result|| <= s_sat.
VecM clamp_accel(VecM a, double s_sat);

// Smooth speed cap: the zero vector maps to itself; otherwise the direction
// is preserved and the speed becomes v_max * tanh(||v|| / v_max), which is
// strictly below both ||v|| and v_max.
VecM saturate_speed(VecM v, double v_max);

// Returns the neighbor table for the state's current positions, rebuilding
// the cached one when stale.
const NeighborTable& current_neighbors(SimState& state, const SimConfig& config);

// Advances one step of semi-implicit Euler with a fixed sub-step order:
//   1. build the neighbor table from current positions
//   2. evaluate every agent's acceleration at the current time from the same
//      pre-step snapshot
//   3. clamp each acceleration to accel_limit()
//   4. v += a*dt
//   5. v = saturate_speed(v, v_max)
//   6. p += v*dt
//   7. advance the step index (time = step_index * dt)
// Throws NumericalError naming the agent and step if any sub-step produces a
// non-finite value.
void step(SimState& state, const SimConfig& config);

// Observer hooks for a run. All callbacks are optional. on_state fires at
// every step boundary including t = 0 and the final step; on_metrics every
// metrics_stride steps; on_snapshot at the step nearest each requested
// snapshot time, with the requested time as label.
struct RunSinks {
  std::function<void(const MetricsRow&)> on_metrics;
  std::function<void(const SimState&, double label)> on_snapshot;
  std::function<void(const SimState&)> on_state;
};

struct RunSummary {
  std::optional<double> final_gamma;
  std::optional<double> final_min_sep;
  double wall_seconds = 0.0;
  std::int64_t steps = 0;
  std::int64_t metrics_rows = 0;
};

// Full experiment: init_flock, then step_count steps with metrics and
// snapshot emission. Deterministic for a fixed config: identical outputs for
// every worker-thread count.
RunSummary run(const SimConfig& config, const RunSinks& sinks = {});

}  // namespace flock
