#pragma once

#include "flock/config.hpp"
#include "flock/rng.hpp"
#include "flock/state.hpp"

namespace flock {

// Agents closer than this at t = 0 are resampled, which keeps the
// cohesion-separation weight finite from the first step.
inline constexpr double kMinInitialSpacing = 1e-3;

// Builds the initial flock. Draw order, shared by every implementation of
// this tool:
//   1. all positions, agent by agent, component by component, each uniform in
//      [0, init_box); a placement closer than kMinInitialSpacing to any
//      already-placed agent is rejected and redrawn (m fresh draws);
//   2. all velocities, agent by agent: direction first, then speed uniform in
//      [0, v0_max). Direction draws per agent: m = 1 takes one draw (sign),
//      m = 2 one draw (angle in [0, 2pi)), m >= 3 takes 2*ceil(m/2) draws
//      (Box-Muller normals, normalized).
// Throws InitError after 100 consecutive rejections for one agent.
SimState init_flock(const SimConfig& config, RandomSource& rng);

}  // namespace flock
