#pragma once

#include <optional>

#include "flock/neighborhood.hpp"
#include "flock/state.hpp"

namespace flock {

// Speeds below this have no usable direction; cosine terms involving them
// count as 0.
inline constexpr double kMinSpeedForCosine = 1e-12;

// One sampled time point. gamma is absent when no agent has a neighbor;
// min_sep is absent for fewer than two agents.
struct MetricsRow {
  double t = 0.0;
  std::optional<double> gamma;     // in [-1, 1]
  std::optional<double> min_sep;   // m
  double mean_nbrs = 0.0;
  int min_nbrs = 0;
  int max_nbrs = 0;
};

// Directional alignment: for each agent with at least one neighbor, the mean
// cosine similarity between its velocity and its neighbors' velocities, then
// the mean of that over those agents. Agents without neighbors are excluded
// from the outer mean.
std::optional<double> alignment_gamma(const SimState& state,
                                      const NeighborTable& table);

// Minimum over all unordered pairs of ||p_i - p_j||, radius-unlimited.
std::optional<double> min_separation(const SimState& state);

struct NbrStats {
  double mean = 0.0;
  int min = 0;
  int max = 0;
};

// Mean, minimum, and maximum of per-agent neighbor counts.
NbrStats neighborhood_stats(const NeighborTable& table);

MetricsRow collect_metrics(const SimState& state, const NeighborTable& table);

}  // namespace flock
