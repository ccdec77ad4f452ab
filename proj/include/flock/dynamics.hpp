#pragma once

#include "flock/config.hpp"
#include "flock/neighborhood.hpp"
#include "flock/state.hpp"
#include "flock/vec.hpp"

namespace flock {

// Distances below this are clamped inside psi_weight; the cohesion weight
// diverges at zero separation and the acceleration clamp downstream bounds
// the rest.
inline constexpr double kMinPsiDistance = 1e-9;

// Cohesion-separation weight 1 - nbr_count/dist. Zero exactly at
// dist == nbr_count: repulsive below, attractive above.
double psi_weight(double dist, int nbr_count);

// Velocity-alignment weight 1/nbr_count.
double phi_weight(int nbr_count);

// Position-alignment weight. With t_eff = max(t, t_floor):
//   thresholded:  -max(nbr_count/t_eff, k*nbr_count)
//   otherwise:    -nbr_count/t_eff
// Continuous at t = 1/k, where both branches equal k*nbr_count, and constant
// beyond it when thresholded. t_floor (normally dt) guards t = 0.
double phi_hat_weight(double t, int nbr_count, double k, bool thresholded,
                      double t_floor);

// Acceleration of agent i under the position-velocity rule:
//   sum_j psi(d_ij)(p_j - p_i) + sum_j (1/|N_i|)(v_j - v_i)
// Zero when the neighborhood is empty. Both sums run in ascending neighbor-id
// order so results are bit-identical for any thread count.
VecM accel_pos_vel(const SimState& state, const NeighborTable& table, int i);

// Acceleration of agent i under the position-only rule. With
// ph = phi_hat_weight(t, |N_i|, k, thresholded, t_floor) and
// psi_hat(d) = psi(d, |N_i|) - ph:
//   sum_j psi_hat(d_ij)(p_j - p_i) + sum_j ph (p_j(0) - p_i(0))
// Algebraically this equals the cohesion sum plus
// (-ph) * sum_j [(p_j - p_i) - (p_j(0) - p_i(0))].
VecM accel_position(const SimState& state, const NeighborTable& table, int i,
                    double t, double k, bool thresholded, double t_floor);

// Dispatch over config.model.
VecM accel(const SimState& state, const NeighborTable& table, int i, double t,
           const SimConfig& config);

}  // namespace flock
