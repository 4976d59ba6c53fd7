#pragma once

#include <cstdint>
#include <vector>

#include "unfold/point_cloud.hpp"

namespace unfold {

/// Symmetric r-neighborhood adjacency built once from the initial manifold
/// M(0) and frozen for the whole run: j is a neighbor of i iff
/// 0 < dist(i, j) < r on M(0). Initial pair distances are stored alongside
/// the adjacency because the elastic interaction needs them at every step.
class NeighborGraph {
public:
    double radius() const { return radius_; }
    std::size_t size() const { return neighbors_.size(); }

    /// Sorted ascending neighbor indices of point i.
    const std::vector<std::int32_t>& neighbors(std::size_t i) const {
        return neighbors_[i];
    }
    /// Initial distances parallel to neighbors(i).
    const std::vector<double>& initial_distances(std::size_t i) const {
        return initial_distances_[i];
    }

    std::size_t degree(std::size_t i) const { return neighbors_[i].size(); }
    bool is_neighbor(std::size_t i, std::size_t j) const;

    /// Unordered neighbor pair count (each pair counted once).
    std::size_t pair_count() const;

    /// Points with empty neighborhoods. The flattening field is still
    /// defined for them (repulsion only), so this is a warning, not an
    /// error.
    const std::vector<std::int32_t>& isolated_points() const { return isolated_; }

    /// Unordered pairs at exactly zero distance on M(0). Excluded from the
    /// adjacency by the strict 0 < dist test, but the repulsive unit vector
    /// is undefined for them, so callers should surface a warning.
    std::int64_t coincident_pairs() const { return coincident_pairs_; }

    friend NeighborGraph build_neighbor_graph(const PointCloud& cloud, double r);

private:
    double radius_ = 0.0;
    std::vector<std::vector<std::int32_t>> neighbors_;
    std::vector<std::vector<double>> initial_distances_;
    std::vector<std::int32_t> isolated_;
    std::int64_t coincident_pairs_ = 0;
};

/// Exhaustive O(N^2) scan applying the strict test 0 < dist < r to every
/// pair of `cloud` (which must be the initial manifold M(0)).
/// Throws UsageError if r <= 0 or the cloud is empty.
NeighborGraph build_neighbor_graph(const PointCloud& cloud, double r);

/// Default neighborhood radius for clouds that come without one: the 1st
/// percentile (nearest-rank) of the nonzero pairwise distances, times
/// `multiplier`. Scales with the sampling density rather than the extent,
/// so dense sheets and sparse curves both get a few ring-1 neighbors.
/// Throws UsageError when multiplier <= 0 or no nonzero pair exists.
double percentile_radius(const PointCloud& cloud, double multiplier = 2.0);

} // namespace unfold
