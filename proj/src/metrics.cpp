#include "flock/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flock/parallel.hpp"

namespace flock {

namespace {
constexpr std::int64_t kAgentGrain = 512;
}

std::optional<double> alignment_gamma(const SimState& state,
                                      const NeighborTable& table) {
  const int n = state.agent_count();
  std::vector<double> speeds(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    speeds[static_cast<std::size_t>(i)] =
        state.agents[static_cast<std::size_t>(i)].velocity.norm();
  }

  // Per-agent inner means are independent; the outer mean is reduced in id
  // order afterwards.
  std::vector<double> inner(static_cast<std::size_t>(n), 0.0);
  std::vector<char> has_nbrs(static_cast<std::size_t>(n), 0);
  parallel_for(n, kAgentGrain, [&](std::int64_t idx) {
    const int i = static_cast<int>(idx);
    const std::vector<int>& nbrs = table.neighbors(i);
    if (nbrs.empty()) return;
    const VecM& vi = state.agents[static_cast<std::size_t>(i)].velocity;
    const double si = speeds[static_cast<std::size_t>(i)];
    double sum = 0.0;
    for (int j : nbrs) {
      const double sj = speeds[static_cast<std::size_t>(j)];
      if (si < kMinSpeedForCosine || sj < kMinSpeedForCosine) continue;  // cosine 0
      const double cosine =
          vi.dot(state.agents[static_cast<std::size_t>(j)].velocity) / (si * sj);
      sum += std::clamp(cosine, -1.0, 1.0);
    }
    inner[static_cast<std::size_t>(i)] = sum / static_cast<double>(nbrs.size());
    has_nbrs[static_cast<std::size_t>(i)] = 1;
  });

  double total = 0.0;
  int counted = 0;
  for (int i = 0; i < n; ++i) {
    if (has_nbrs[static_cast<std::size_t>(i)]) {
      total += inner[static_cast<std::size_t>(i)];
      ++counted;
    }
  }
  if (counted == 0) return std::nullopt;
  return total / static_cast<double>(counted);
}

std::optional<double> min_separation(const SimState& state) {
  const int n = state.agent_count();
  if (n < 2) return std::nullopt;
  double best_sq = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best_sq = std::min(best_sq,
                         distance_sq(state.agents[static_cast<std::size_t>(i)].position,
                                     state.agents[static_cast<std::size_t>(j)].position));
    }
  }
  return std::sqrt(best_sq);
}

NbrStats neighborhood_stats(const NeighborTable& table) {
  const int n = table.agent_count();
  if (n == 0) return {};
  NbrStats stats;
  stats.min = table.count(0);
  stats.max = table.count(0);
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    const int c = table.count(i);
    total += c;
    stats.min = std::min(stats.min, c);
    stats.max = std::max(stats.max, c);
  }
  stats.mean = static_cast<double>(total) / static_cast<double>(n);
  return stats;
}

MetricsRow collect_metrics(const SimState& state, const NeighborTable& table) {
  MetricsRow row;
  row.t = state.time;
  row.gamma = alignment_gamma(state, table);
  row.min_sep = min_separation(state);
  const NbrStats stats = neighborhood_stats(table);
  row.mean_nbrs = stats.mean;
  row.min_nbrs = stats.min;
  row.max_nbrs = stats.max;
  return row;
}

}  // namespace flock
