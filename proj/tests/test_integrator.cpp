#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "flock/dynamics.hpp"
#include "flock/errors.hpp"
#include "flock/init.hpp"
#include "flock/integrator.hpp"
#include "flock/rng.hpp"
#include "test_support.hpp"

using namespace flock;
using flock::test::TestRng;
using flock::test::make_state;

TEST_CASE("clamp_accel preserves direction and caps magnitude") {
  CHECK(clamp_accel(VecM{3.0, 0.0}, 5.0) == VecM{3.0, 0.0});
  CHECK(clamp_accel(VecM{0.0, 10.0}, 5.0) == VecM{0.0, 5.0});
  CHECK(clamp_accel(VecM::zero(2), 5.0) == VecM::zero(2));

  const VecM clamped = clamp_accel(VecM{3.0, 4.0, 12.0}, 2.0);
  CHECK(clamped.norm() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(clamped[0] / clamped[1] == doctest::Approx(3.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("saturate_speed follows the tanh law") {
  CHECK(saturate_speed(VecM::zero(2), 5.0) == VecM::zero(2));

  const VecM at_cap = saturate_speed(VecM{5.0, 0.0}, 5.0);
  CHECK(at_cap[0] ==
        doctest::Approx(5.0 * std::tanh(1.0)).epsilon(1e-12));  // ~3.80797
  CHECK(at_cap[1] == 0.0);

  const VecM fast = saturate_speed(VecM{0.0, 50.0}, 5.0);
  CHECK(std::abs(fast.norm() - 5.0) / 5.0 <= 1e-8);  // asymptote, relative
  CHECK(fast.norm() < 5.0);                          // strictly below the cap

  // Output speed is strictly below the input speed for any nonzero input.
  TestRng rng(3);
  for (int i = 0; i < 100; ++i) {
    const VecM v = test::random_vec(rng, 3, -4.0, 4.0);
    if (v.norm() == 0.0) continue;
    const VecM s = saturate_speed(v, 5.0);
    CHECK(s.norm() < v.norm());
    CHECK(s.norm() < 5.0);
    // Direction preserved.
    CHECK(s.dot(v) == doctest::Approx(s.norm() * v.norm()).epsilon(1e-12));
  }
}

TEST_CASE("step reproduces the documented sub-step order on two agents") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosVel;
  cfg.n = 2;
  cfg.dt = 0.01;

  SimState state = make_state({VecM{0.0, 0.0}, VecM{3.0, 0.0}},
                              {VecM{0.0, 0.0}, VecM{1.0, 0.0}});
  step(state, cfg);

  // Hand evaluation: a1 = (3, 0), below the 5 m/s^2 cap; v = 0.03 before the
  // speed map, then 5*tanh(0.03/5), then p = v*dt.
  const double v_expected = 5.0 * std::tanh(0.03 / 5.0);
  CHECK(state.agents[0].velocity[0] ==
        doctest::Approx(v_expected).epsilon(1e-15));
  CHECK(state.agents[0].velocity[0] == doctest::Approx(0.03).epsilon(1e-4));
  CHECK(state.agents[0].velocity[1] == 0.0);
  CHECK(state.agents[0].position[0] ==
        doctest::Approx(v_expected * 0.01).epsilon(1e-15));
  CHECK(state.agents[0].position[0] == doctest::Approx(0.0003).epsilon(1e-4));

  CHECK(state.step_index == 1);
  CHECK(state.time == 0.01);
}

TEST_CASE("step equals a replay of the sub-step order on a random flock") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosition;
  cfg.n = 5;
  cfg.r = 4.0;
  cfg.dt = 0.02;

  TestRng rng(8);
  std::vector<VecM> ps, vs;
  for (int i = 0; i < 5; ++i) {
    ps.push_back(test::random_vec(rng, 2, 0.0, 6.0));
    vs.push_back(test::random_vec(rng, 2, -1.0, 1.0));
  }
  SimState state = make_state(ps, vs);
  SimState replay = state;

  for (int q = 0; q < 20; ++q) {
    // Replay the documented order with the library primitives, all agents
    // advancing from the same snapshot.
    const NeighborTable table = build_neighbors_naive(replay.positions(), cfg.r);
    std::vector<VecM> acc(5);
    for (int i = 0; i < 5; ++i) {
      acc[static_cast<std::size_t>(i)] = clamp_accel(
          accel(replay, table, i, replay.time, cfg), cfg.accel_limit());
      CHECK(acc[static_cast<std::size_t>(i)].norm() <=
            cfg.accel_limit() * (1.0 + 1e-15));
    }
    for (int i = 0; i < 5; ++i) {
      AgentState& agent = replay.agents[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < 2; ++c) {
        agent.velocity[c] += acc[static_cast<std::size_t>(i)][c] * cfg.dt;
      }
      agent.velocity = saturate_speed(agent.velocity, cfg.v_max);
      for (std::size_t c = 0; c < 2; ++c) {
        agent.position[c] += agent.velocity[c] * cfg.dt;
      }
    }
    replay.step_index += 1;
    replay.time = static_cast<double>(replay.step_index) * cfg.dt;

    step(state, cfg);
    REQUIRE(state.agents == replay.agents);  // bit-identical
    CHECK(state.time == static_cast<double>(q + 1) * cfg.dt);
  }
}

TEST_CASE("equilibrium pair keeps its relative position") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosVel;
  cfg.n = 2;

  // Distance 1 equals the neighbor count; equal velocities kill alignment.
  SimState state = make_state({VecM{0.0, 0.0}, VecM{1.0, 0.0}},
                              {VecM{0.2, 0.1}, VecM{0.2, 0.1}});
  const VecM gap_before = state.agents[1].position - state.agents[0].position;
  for (int q = 0; q < 10; ++q) step(state, cfg);
  const VecM gap_after = state.agents[1].position - state.agents[0].position;
  CHECK(gap_before == gap_after);
}

TEST_CASE("isolated agents travel in straight lines") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosition;
  cfg.n = 2;
  cfg.r = 7.5;

  SimState state = make_state({VecM{0.0, 0.0}, VecM{1000.0, 0.0}},
                              {VecM{0.3, 0.4}, VecM{-0.5, 0.0}});
  const VecM v0 = state.agents[0].velocity;
  VecM expected_v = v0;
  for (int q = 0; q < 50; ++q) {
    step(state, cfg);
    // No force: the velocity only passes through the speed map each step.
    expected_v = saturate_speed(expected_v, cfg.v_max);
    CHECK(state.agents[0].velocity == expected_v);
    // Path stays on the ray along the initial heading.
    const VecM d = state.agents[0].position - state.agents[0].initial_position;
    CHECK(std::abs(d[0] * v0[1] - d[1] * v0[0]) <= 1e-12 * d.norm() * v0.norm());
    CHECK(d.dot(v0) > 0.0);
  }
}

TEST_CASE("speeds stay strictly below v_max after every step") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosVel;
  cfg.n = 10;
  cfg.init_box = 5.0;
  cfg.seed = 21;

  RandomSource rng(cfg.seed);
  SimState state = init_flock(cfg, rng);
  for (int q = 0; q < 200; ++q) {
    step(state, cfg);
    for (const AgentState& agent : state.agents) {
      CHECK(agent.velocity.norm() < cfg.v_max);
    }
  }
}

TEST_CASE("per-step velocity change is bounded by the acceleration cap") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosition;
  cfg.n = 8;
  cfg.init_box = 3.0;  // crowded, large raw forces
  cfg.seed = 5;

  RandomSource rng(cfg.seed);
  SimState state = init_flock(cfg, rng);
  for (int q = 0; q < 100; ++q) {
    SimState before = state;
    const NeighborTable table = build_neighbors_naive(before.positions(), cfg.r);
    step(state, cfg);
    for (int i = 0; i < cfg.n; ++i) {
      // Reconstruct the pre-saturation velocity update.
      const VecM a = clamp_accel(accel(before, table, i, before.time, cfg),
                                 cfg.accel_limit());
      CHECK((a * cfg.dt).norm() <= cfg.accel_limit() * cfg.dt * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("first-order convergence in dt") {
  // Smooth setting: complete neighbor graph throughout, speed and
  // acceleration caps far away, so the scheme's own truncation dominates.
  SimConfig base;
  base.model = ModelKind::kPosVel;
  base.n = 3;
  base.r = 50.0;
  base.v_max = 1000.0;
  base.t_vmax = 0.01;

  auto state_at_one_second = [&base](double dt) {
    SimConfig cfg = base;
    cfg.dt = dt;
    SimState state = make_state(
        {VecM{0.0, 0.0}, VecM{1.5, 0.3}, VecM{0.4, 1.2}},
        {VecM{0.3, -0.1}, VecM{-0.2, 0.2}, VecM{0.1, 0.05}});
    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / dt));
    for (std::int64_t q = 0; q < steps; ++q) step(state, cfg);
    return state;
  };

  auto state_norm_diff = [](const SimState& a, const SimState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
      s += distance_sq(a.agents[i].position, b.agents[i].position);
      s += distance_sq(a.agents[i].velocity, b.agents[i].velocity);
    }
    return std::sqrt(s);
  };

  const SimState coarse = state_at_one_second(0.01);
  const SimState medium = state_at_one_second(0.005);
  const SimState reference = state_at_one_second(0.00125);

  const double err_coarse = state_norm_diff(coarse, reference);
  const double err_medium = state_norm_diff(medium, reference);
  REQUIRE(err_medium > 0.0);
  const double ratio = err_coarse / err_medium;
  // First order against a dt/8 reference: (1 - 1/8)/(1/2 - 1/8) = 7/3.
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 3.0);
}

TEST_CASE("non-finite states abort with agent and step in the message") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosVel;
  cfg.n = 2;

  SimState state = make_state({VecM{0.0, 0.0}, VecM{1.0, 0.0}},
                              {VecM{std::nan(""), 0.0}, VecM{0.0, 0.0}});
  state.step_index = 7;
  state.time = 0.07;
  try {
    step(state, cfg);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.step() == 7);
    CHECK(e.agent() >= 0);
    CHECK(std::string(e.what()).find("step 7") != std::string::npos);
    CHECK(std::string(e.what()).find("agent") != std::string::npos);
  }
}

TEST_CASE("coincident agents stay finite thanks to the distance guard") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosVel;
  cfg.n = 2;

  SimState state = make_state({VecM{1.0, 1.0}, VecM{1.0, 1.0}},
                              {VecM{0.1, 0.0}, VecM{-0.1, 0.0}});
  for (int q = 0; q < 10; ++q) step(state, cfg);
  for (const AgentState& agent : state.agents) {
    CHECK(agent.position.all_finite());
    CHECK(agent.velocity.all_finite());
  }
}

TEST_CASE("run: empty duration emits one row and the t=0 snapshot") {
  SimConfig cfg;
  cfg.n = 5;
  cfg.t_end = 0.0;
  cfg.snapshot_times = {0.0};

  int rows = 0;
  int snapshots = 0;
  int states_seen = 0;
  RunSinks sinks;
  sinks.on_metrics = [&](const MetricsRow& row) {
    ++rows;
    CHECK(row.t == 0.0);
  };
  sinks.on_snapshot = [&](const SimState&, double label) {
    ++snapshots;
    CHECK(label == 0.0);
  };
  sinks.on_state = [&](const SimState&) { ++states_seen; };

  const RunSummary summary = run(cfg, sinks);
  CHECK(rows == 1);
  CHECK(snapshots == 1);
  CHECK(states_seen == 1);
  CHECK(summary.steps == 0);
  CHECK(summary.metrics_rows == 1);
  CHECK(summary.final_min_sep.has_value());
}

TEST_CASE("run: metrics row count follows the stride arithmetic") {
  SimConfig cfg;
  cfg.n = 4;
  cfg.init_box = 5.0;
  cfg.t_end = 1.0;
  cfg.dt = 0.01;
  cfg.metrics_stride = 7;
  cfg.snapshot_times = {};

  std::vector<double> times;
  RunSinks sinks;
  sinks.on_metrics = [&](const MetricsRow& row) { times.push_back(row.t); };
  const RunSummary summary = run(cfg, sinks);

  // Steps 0, 7, ..., 98: floor(100/7) + 1 rows.
  CHECK(times.size() == 15);
  CHECK(summary.metrics_rows == 15);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == doctest::Approx(0.98).epsilon(1e-15));
}

TEST_CASE("run: snapshots land on the nearest step") {
  SimConfig cfg;
  cfg.n = 4;
  cfg.init_box = 5.0;
  cfg.t_end = 1.0;
  cfg.dt = 0.01;
  cfg.snapshot_times = {0.0, 0.504, 1.0};

  std::vector<std::pair<double, double>> seen;  // (label, state time)
  RunSinks sinks;
  sinks.on_snapshot = [&](const SimState& state, double label) {
    seen.emplace_back(label, state.time);
  };
  run(cfg, sinks);
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == std::pair{0.0, 0.0});
  CHECK(seen[1].first == 0.504);
  CHECK(seen[1].second == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(seen[2].first == 1.0);
  CHECK(seen[2].second == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("run: identical config and seed give identical trajectories") {
  SimConfig cfg;
  cfg.model = ModelKind::kPosition;
  cfg.n = 12;
  cfg.t_end = 2.0;
  cfg.seed = 99;
  cfg.snapshot_times = {2.0};

  auto capture = [&cfg] {
    std::vector<MetricsRow> rows;
    std::vector<AgentState> final_agents;
    RunSinks sinks;
    sinks.on_metrics = [&](const MetricsRow& row) { rows.push_back(row); };
    sinks.on_snapshot = [&](const SimState& state, double) {
      final_agents = state.agents;
    };
    run(cfg, sinks);
    return std::pair{rows, final_agents};
  };

  const auto [rows_a, agents_a] = capture();
  const auto [rows_b, agents_b] = capture();
  REQUIRE(rows_a.size() == rows_b.size());
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].gamma == rows_b[i].gamma);
    CHECK(rows_a[i].min_sep == rows_b[i].min_sep);
  }
  CHECK(agents_a == agents_b);
}
