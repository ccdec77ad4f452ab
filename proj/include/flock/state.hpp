#pragma once

#include <cstdint>
#include <vector>

#include "flock/neighborhood.hpp"
#include "flock/vec.hpp"

namespace flock {

// One agent. initial_position is fixed when the flock is created and never
// mutated afterward; the position-only alignment rule reads it every step.
struct AgentState {
  int id = 0;
  VecM position;          // m
  VecM velocity;          // m/s
  VecM initial_position;  // m

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

// Whole-system snapshot. time always equals step_index * dt; it is never an
// accumulated floating-point sum. The neighbor table is a cache keyed by the
// step it was built at (-1 = stale).
struct SimState {
  std::vector<AgentState> agents;
  std::int64_t step_index = 0;
  double time = 0.0;

  NeighborTable neighbors;
  std::int64_t neighbors_step = -1;

  int agent_count() const { return static_cast<int>(agents.size()); }

  std::vector<VecM> positions() const {
    std::vector<VecM> ps;
    ps.reserve(agents.size());
    for (const auto& a : agents) ps.push_back(a.position);
    return ps;
  }
};

}  // namespace flock
