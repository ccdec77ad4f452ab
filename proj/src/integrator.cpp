#include "flock/integrator.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "flock/dynamics.hpp"
#include "flock/errors.hpp"
#include "flock/init.hpp"
#include "flock/parallel.hpp"
#include "flock/rng.hpp"

namespace flock {

namespace {
constexpr std::int64_t kAgentGrain = 512;
}

VecM clamp_accel(VecM a, double s_sat) {
  const double mag = a.norm();
  if (mag <= s_sat) return a;
  a *= s_sat / mag;
  return a;
}

VecM saturate_speed(VecM v, double v_max) {
  const double speed = v.norm();
  if (speed == 0.0) return v;
  v *= v_max * std::tanh(speed / v_max) / speed;
  return v;
}

const NeighborTable& current_neighbors(SimState& state, const SimConfig& config) {
  if (state.neighbors_step != state.step_index) {
    state.neighbors = build_neighbors_grid(state.positions(), config.r);
    state.neighbors_step = state.step_index;
  }
  return state.neighbors;
}

void step(SimState& state, const SimConfig& config) {
  const NeighborTable& table = current_neighbors(state, config);
  const double t = state.time;
  const double s_sat = config.accel_limit();
  const int n = state.agent_count();

  // Every acceleration is evaluated against the same pre-step snapshot before
  // any agent moves.
  std::vector<VecM> acc(static_cast<std::size_t>(n));
  parallel_for(n, kAgentGrain, [&](std::int64_t i) {
    acc[static_cast<std::size_t>(i)] =
        clamp_accel(accel(state, table, static_cast<int>(i), t, config), s_sat);
  });
  for (int i = 0; i < n; ++i) {
    if (!acc[static_cast<std::size_t>(i)].all_finite()) {
      throw NumericalError("acceleration", i, state.step_index);
    }
  }

  parallel_for(n, kAgentGrain, [&](std::int64_t idx) {
    AgentState& agent = state.agents[static_cast<std::size_t>(idx)];
    const VecM& a = acc[static_cast<std::size_t>(idx)];
    const std::size_t m = agent.velocity.dim();
    for (std::size_t c = 0; c < m; ++c) agent.velocity[c] += a[c] * config.dt;
    agent.velocity = saturate_speed(std::move(agent.velocity), config.v_max);
    for (std::size_t c = 0; c < m; ++c) agent.position[c] += agent.velocity[c] * config.dt;
  });
  for (int i = 0; i < n; ++i) {
    const AgentState& agent = state.agents[static_cast<std::size_t>(i)];
    if (!agent.velocity.all_finite()) {
      throw NumericalError("velocity", i, state.step_index);
    }
    if (!agent.position.all_finite()) {
      throw NumericalError("position", i, state.step_index);
    }
  }

  state.step_index += 1;
  state.time = static_cast<double>(state.step_index) * config.dt;
}

RunSummary run(const SimConfig& config, const RunSinks& sinks) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();

  RandomSource rng(config.seed);
  SimState state = init_flock(config, rng);
  const StepSchedule schedule = StepSchedule::from_config(config);

  // Snapshot times land on the nearest step; the requested time is the label.
  std::multimap<std::int64_t, double> snapshot_steps;
  for (double t_snap : config.snapshot_times) {
    std::int64_t q = static_cast<std::int64_t>(std::llround(t_snap / config.dt));
    q = std::max<std::int64_t>(0, std::min(q, schedule.step_count));
    snapshot_steps.emplace(q, t_snap);
  }

  RunSummary summary;
  for (std::int64_t q = 0;; ++q) {
    const NeighborTable& table = current_neighbors(state, config);
    if (sinks.on_state) sinks.on_state(state);
    if (q % config.metrics_stride == 0) {
      if (sinks.on_metrics) sinks.on_metrics(collect_metrics(state, table));
      summary.metrics_rows += 1;
    }
    if (sinks.on_snapshot) {
      auto [begin, end] = snapshot_steps.equal_range(q);
      for (auto it = begin; it != end; ++it) sinks.on_snapshot(state, it->second);
    }
    if (q == schedule.step_count) {
      const MetricsRow final_row = collect_metrics(state, table);
      summary.final_gamma = final_row.gamma;
      summary.final_min_sep = final_row.min_sep;
      break;
    }
    step(state, config);
  }

  summary.steps = schedule.step_count;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
          .count();
  return summary;
}

}  // namespace flock
