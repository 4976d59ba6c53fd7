#pragma once

#include <cstddef>
#include <vector>

#include "unfold/dynamics.hpp"
#include "unfold/neighbor_graph.hpp"
#include "unfold/point_cloud.hpp"

namespace unfold {

/// Singular spectrum of the centered coordinate matrix, the instrument
/// behind the flattening and intrinsic-dimension checks.
struct SpectrumReport {
    /// Singular values sorted descending, length n.
    std::vector<double> singular_values;
    /// Explained-variance ratios (sigma_k^2 over their sum), summing to 1
    /// when the cloud is not a single repeated point.
    std::vector<double> explained_variance;
    /// Smallest d whose cumulative explained variance reaches the
    /// threshold the report was computed with.
    int intrinsic_dimension = 0;
};

/// Neighbor-pair relative length error against the initial distances.
struct DistortionStats {
    double max = 0.0;
    double rms = 0.0;
    std::size_t pair_count = 0;
};

/// Everything the topology-preservation claim is judged on: how far
/// neighbor pairs drifted from their rest lengths, how close any two
/// points have come, and how far the whole cloud migrated.
struct TopologyReport {
    DistortionStats distortion;
    /// Min over current distances of pairs that are graph neighbors;
    /// infinity when the graph has no neighbor pair.
    double min_neighbor_distance = 0.0;
    /// Min over current distances of non-neighbor pairs (the pairs the
    /// repulsion must keep apart); infinity when every pair is a
    /// neighbor pair.
    double min_non_neighbor_distance = 0.0;
    /// Min over all pairs, the value the adhesion flag tests.
    double min_pairwise_distance = 0.0;
    /// True iff min_pairwise_distance < epsilon_adhesion: two points have
    /// effectively fused and the deformation is no longer injective.
    bool adhesion = false;
    /// ||centroid(current) - centroid(initial)||.
    double centroid_drift = 0.0;
};

/// Distortion of each neighbor pair (i, j):
/// | current_dist(i,j) - initial_dist(i,j) | / initial_dist(i,j),
/// reduced to max and RMS over unordered pairs. An empty graph yields
/// zeros with pair_count 0.
DistortionStats neighbor_distortion(const ManifoldState& state,
                                    const NeighborGraph& graph);

/// Full topology report for the current state; epsilon_adhesion is the
/// fusion threshold for the adhesion flag. O(N^2).
TopologyReport adhesion_check(const ManifoldState& state,
                              const NeighborGraph& graph,
                              double epsilon_adhesion = 1e-9);

/// Center the cloud at its mean and take the singular values of the N x n
/// centered coordinate matrix. Intrinsic dimension is the smallest d with
/// cumulative explained variance >= variance_threshold. Deterministic;
/// requires N >= 2 (UsageError otherwise).
SpectrumReport spectrum(const PointCloud& cloud,
                        double variance_threshold = 0.99);

/// sigma_{d+1} / sigma_1 for 1 <= d < n (UsageError otherwise): 0 for a
/// perfectly d-flat cloud, and defined as 0 when sigma_1 = 0.
double flatness_ratio(const PointCloud& cloud, int d);

/// Max over unordered pairs of current distance (the cloud's diameter);
/// the unfolding experiments track it across snapshots. Requires N >= 2.
double max_pairwise_extent(const PointCloud& cloud);

} // namespace unfold
