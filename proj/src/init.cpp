#include "flock/init.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "flock/errors.hpp"

namespace flock {

namespace {

constexpr int kMaxResamples = 100;

// Uniform direction on the unit sphere with a deterministic draw count:
// m = 1 one draw (sign), m = 2 one draw (angle), m >= 3 a Box-Muller normal
// per component (two draws per pair, the odd component discards its twin).
VecM sample_unit_direction(RandomSource& rng, int m) {
  VecM dir(static_cast<std::size_t>(m));
  if (m == 1) {
    dir[0] = rng.next_uniform() < 0.5 ? -1.0 : 1.0;
    return dir;
  }
  if (m == 2) {
    const double angle = 2.0 * std::numbers::pi * rng.next_uniform();
    dir[0] = std::cos(angle);
    dir[1] = std::sin(angle);
    return dir;
  }
  for (int c = 0; c < m; c += 2) {
    const double u1 = rng.next_uniform();
    const double u2 = rng.next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    dir[static_cast<std::size_t>(c)] = radius * std::cos(angle);
    if (c + 1 < m) dir[static_cast<std::size_t>(c + 1)] = radius * std::sin(angle);
  }
  const double norm = dir.norm();
  if (norm < 1e-300) {
    // All normals collapsed; any fixed direction keeps the draw count intact.
    for (int c = 0; c < m; ++c) dir[static_cast<std::size_t>(c)] = 0.0;
    dir[0] = 1.0;
    return dir;
  }
  dir *= 1.0 / norm;
  return dir;
}

}  // namespace

SimState init_flock(const SimConfig& config, RandomSource& rng) {
  config.validate();
  const int n = config.n;
  const int m = config.m;
  const double spacing_sq = kMinInitialSpacing * kMinInitialSpacing;

  std::vector<VecM> positions;
  positions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int rejections = 0;
    for (;;) {
      VecM p(static_cast<std::size_t>(m));
      for (int c = 0; c < m; ++c) {
        p[static_cast<std::size_t>(c)] = rng.next_uniform() * config.init_box;
      }
      bool clear = true;
      for (const VecM& q : positions) {
        if (distance_sq(p, q) < spacing_sq) {
          clear = false;
          break;
        }
      }
      if (clear) {
        positions.push_back(std::move(p));
        break;
      }
      if (++rejections >= kMaxResamples) {
        throw InitError("could not place agent " + std::to_string(i) + " after " +
                        std::to_string(kMaxResamples) +
                        " resamples; init_box too small for n");
      }
    }
  }

  SimState state;
  state.agents.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    AgentState agent;
    agent.id = i;
    agent.position = positions[static_cast<std::size_t>(i)];
    const VecM direction = sample_unit_direction(rng, m);
    const double speed = rng.next_uniform() * config.v0_max;
    agent.velocity = direction * speed;
    agent.initial_position = agent.position;
    state.agents.push_back(std::move(agent));
  }
  state.step_index = 0;
  state.time = 0.0;
  return state;
}

}  // namespace flock
