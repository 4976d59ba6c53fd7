#include "unfold/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unfold/errors.hpp"

namespace unfold {

bool NeighborGraph::is_neighbor(std::size_t i, std::size_t j) const {
    const auto& nb = neighbors_[i];
    return std::binary_search(nb.begin(), nb.end(), static_cast<std::int32_t>(j));
}

std::size_t NeighborGraph::pair_count() const {
    std::size_t total = 0;
    for (const auto& nb : neighbors_) {
        total += nb.size();
    }
    return total / 2;
}

NeighborGraph build_neighbor_graph(const PointCloud& cloud, double r) {
    if (!(r > 0.0)) {
        throw UsageError("neighborhood radius must be positive, got " + std::to_string(r));
    }
    if (cloud.empty()) {
        throw UsageError("cannot build a neighbor graph over an empty cloud");
    }
    const std::size_t n = cloud.size();
    NeighborGraph graph;
    graph.radius_ = r;
    graph.neighbors_.resize(n);
    graph.initial_distances_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(cloud.point(i), cloud.point(j));
            if (d == 0.0) {
                ++graph.coincident_pairs_;
            } else if (d < r) {
                graph.neighbors_[i].push_back(static_cast<std::int32_t>(j));
                graph.initial_distances_[i].push_back(d);
                graph.neighbors_[j].push_back(static_cast<std::int32_t>(i));
                graph.initial_distances_[j].push_back(d);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.neighbors_[i].empty()) {
            graph.isolated_.push_back(static_cast<std::int32_t>(i));
        }
    }
    return graph;
}

double percentile_radius(const PointCloud& cloud, double multiplier) {
    if (!(multiplier > 0.0)) {
        throw UsageError("radius multiplier must be positive, got " + std::to_string(multiplier));
    }
    const std::size_t n = cloud.size();
    std::vector<double> distances;
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(cloud.point(i), cloud.point(j));
            if (d > 0.0) {
                distances.push_back(d);
            }
        }
    }
    if (distances.empty()) {
        throw UsageError("cannot pick a default radius: no two points at nonzero distance");
    }
    std::sort(distances.begin(), distances.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.01 * static_cast<double>(distances.size())));
    const std::size_t index = rank > 0 ? rank - 1 : 0;
    return distances[index] * multiplier;
}

} // namespace unfold
