#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "flock/vec.hpp"

namespace flock {

// Metric neighborhoods N_i = { j != i : ||p_j - p_i|| <= r } for all agents.
// Lists are strictly ascending by id; the relation is symmetric (shared
// radius) and irreflexive. Immutable after build.
class NeighborTable {
 public:
  NeighborTable() = default;
  explicit NeighborTable(std::size_t n) : lists_(n) {}

  int agent_count() const { return static_cast<int>(lists_.size()); }
  const std::vector<int>& neighbors(int i) const {
    return lists_[static_cast<std::size_t>(i)];
  }
  int count(int i) const {
    return static_cast<int>(lists_[static_cast<std::size_t>(i)].size());
  }

  std::vector<int>& mutable_neighbors(int i) {
    return lists_[static_cast<std::size_t>(i)];
  }

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

 private:
  std::vector<std::vector<int>> lists_;
};

// Uniform grid over space with cell size equal to the interaction radius.
// Cell coordinate = floor(component / cell_size) per dimension; every agent
// lives in exactly one cell, so a radius query touches only the 3^m adjacent
// cells.
class UniformGrid {
 public:
  UniformGrid(const std::vector<VecM>& positions, double cell_size);

  std::size_t dim() const { return dim_; }
  double cell_size() const { return cell_size_; }

  std::vector<std::int64_t> cell_of(const VecM& p) const;

  // Agent ids stored in the given cell, or nullptr when the cell is empty.
  const std::vector<int>* cell(const std::vector<std::int64_t>& coords) const;

 private:
  struct CoordHash {
    std::size_t operator()(const std::vector<std::int64_t>& c) const;
  };

  double cell_size_ = 1.0;
  std::size_t dim_ = 0;
  std::unordered_map<std::vector<std::int64_t>, std::vector<int>, CoordHash> cells_;
};

// Exact all-pairs table; the reference implementation. Boundary inclusive:
// distance exactly r is a neighbor.
NeighborTable build_neighbors_naive(const std::vector<VecM>& positions, double r);

// Grid-accelerated table. Output is identical to build_neighbors_naive for
// every input; both paths share one distance predicate so boundary ties
// resolve the same way.
NeighborTable build_neighbors_grid(const std::vector<VecM>& positions, double r);

}  // namespace flock
