#include "flock/neighborhood.hpp"

#include <algorithm>
#include <cmath>

#include "flock/parallel.hpp"

namespace flock {

namespace {

// Shared by the naive and grid paths so boundary ties resolve identically.
inline bool within_radius(const VecM& a, const VecM& b, double r_sq) {
  return distance_sq(a, b) <= r_sq;
}

constexpr std::int64_t kQueryGrain = 512;

}  // namespace

std::size_t UniformGrid::CoordHash::operator()(
    const std::vector<std::int64_t>& c) const {
  // FNV-1a over the coordinate words.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : c) {
    auto u = static_cast<std::uint64_t>(v);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (u >> (8 * byte)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

UniformGrid::UniformGrid(const std::vector<VecM>& positions, double cell_size)
    : cell_size_(cell_size), dim_(positions.empty() ? 0 : positions[0].dim()) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    cells_[cell_of(positions[i])].push_back(static_cast<int>(i));
  }
}

std::vector<std::int64_t> UniformGrid::cell_of(const VecM& p) const {
  std::vector<std::int64_t> coords(dim_);
  for (std::size_t d = 0; d < dim_; ++d) {
    coords[d] = static_cast<std::int64_t>(std::floor(p[d] / cell_size_));
  }
  return coords;
}

const std::vector<int>* UniformGrid::cell(
    const std::vector<std::int64_t>& coords) const {
  auto it = cells_.find(coords);
  return it == cells_.end() ? nullptr : &it->second;
}

NeighborTable build_neighbors_naive(const std::vector<VecM>& positions, double r) {
  const int n = static_cast<int>(positions.size());
  const double r_sq = r * r;
  NeighborTable table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (within_radius(positions[static_cast<std::size_t>(i)],
                        positions[static_cast<std::size_t>(j)], r_sq)) {
        table.mutable_neighbors(i).push_back(j);
        table.mutable_neighbors(j).push_back(i);
      }
    }
  }
  // The i<j sweep appends ids in ascending order already.
  return table;
}

NeighborTable build_neighbors_grid(const std::vector<VecM>& positions, double r) {
  const int n = static_cast<int>(positions.size());
  const double r_sq = r * r;
  NeighborTable table(static_cast<std::size_t>(n));
  if (n == 0) return table;

  const UniformGrid grid(positions, r);
  const std::size_t m = grid.dim();

  // Per-agent queries are independent; each writes only its own list, so the
  // table is identical for any thread count.
  parallel_for(n, kQueryGrain, [&](std::int64_t idx) {
    const int i = static_cast<int>(idx);
    const VecM& pi = positions[static_cast<std::size_t>(i)];
    const std::vector<std::int64_t> base = grid.cell_of(pi);
    std::vector<std::int64_t> probe(m);
    std::vector<int> offsets(m, -1);
    auto& out = table.mutable_neighbors(i);

    // Odometer over the 3^m offset combinations in {-1,0,1}^m.
    for (;;) {
      for (std::size_t d = 0; d < m; ++d) probe[d] = base[d] + offsets[d];
      if (const std::vector<int>* ids = grid.cell(probe)) {
        for (int j : *ids) {
          if (j != i &&
              within_radius(pi, positions[static_cast<std::size_t>(j)], r_sq)) {
            out.push_back(j);
          }
        }
      }
      std::size_t d = 0;
      while (d < m && offsets[d] == 1) offsets[d++] = -1;
      if (d == m) break;
      ++offsets[d];
    }
    std::sort(out.begin(), out.end());
  });
  return table;
}

}  // namespace flock
