#include "flock/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace flock {

double psi_weight(double dist, int nbr_count) {
  const double d = std::max(dist, kMinPsiDistance);
  return 1.0 - static_cast<double>(nbr_count) / d;
}

double phi_weight(int nbr_count) { return 1.0 / static_cast<double>(nbr_count); }

double phi_hat_weight(double t, int nbr_count, double k, bool thresholded,
                      double t_floor) {
  const double t_eff = std::max(t, t_floor);
  const double decay = static_cast<double>(nbr_count) / t_eff;
  if (!thresholded) return -decay;
  return -std::max(decay, k * static_cast<double>(nbr_count));
}

VecM accel_pos_vel(const SimState& state, const NeighborTable& table, int i) {
  const auto& agents = state.agents;
  const AgentState& self = agents[static_cast<std::size_t>(i)];
  const std::size_t m = self.position.dim();
  const std::vector<int>& nbrs = table.neighbors(i);
  if (nbrs.empty()) return VecM::zero(m);

  const int count = static_cast<int>(nbrs.size());
  const double phi = phi_weight(count);
  VecM cohesion(m);
  VecM alignment(m);
  for (int j : nbrs) {
    const AgentState& other = agents[static_cast<std::size_t>(j)];
    const double psi = psi_weight(distance(other.position, self.position), count);
    for (std::size_t c = 0; c < m; ++c) {
      cohesion[c] += psi * (other.position[c] - self.position[c]);
      alignment[c] += phi * (other.velocity[c] - self.velocity[c]);
    }
  }
  return cohesion + alignment;
}

VecM accel_position(const SimState& state, const NeighborTable& table, int i,
                    double t, double k, bool thresholded, double t_floor) {
  const auto& agents = state.agents;
  const AgentState& self = agents[static_cast<std::size_t>(i)];
  const std::size_t m = self.position.dim();
  const std::vector<int>& nbrs = table.neighbors(i);
  if (nbrs.empty()) return VecM::zero(m);

  const int count = static_cast<int>(nbrs.size());
  const double ph = phi_hat_weight(t, count, k, thresholded, t_floor);
  VecM cohesion(m);
  VecM initial(m);
  for (int j : nbrs) {
    const AgentState& other = agents[static_cast<std::size_t>(j)];
    const double psi_hat =
        psi_weight(distance(other.position, self.position), count) - ph;
    for (std::size_t c = 0; c < m; ++c) {
      cohesion[c] += psi_hat * (other.position[c] - self.position[c]);
      initial[c] += ph * (other.initial_position[c] - self.initial_position[c]);
    }
  }
  return cohesion + initial;
}

VecM accel(const SimState& state, const NeighborTable& table, int i, double t,
           const SimConfig& config) {
  switch (config.model) {
    case ModelKind::kPosVel:
      return accel_pos_vel(state, table, i);
    case ModelKind::kPosition:
      return accel_position(state, table, i, t, config.k, true, config.dt);
    case ModelKind::kPositionNoThreshold:
      return accel_position(state, table, i, t, config.k, false, config.dt);
  }
  return VecM::zero(state.agents[static_cast<std::size_t>(i)].position.dim());
}

}  // namespace flock
