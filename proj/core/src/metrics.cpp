#include "unfold/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "unfold/errors.hpp"

namespace unfold {

DistortionStats neighbor_distortion(const ManifoldState& state, const NeighborGraph& graph) {
    if (graph.size() != state.current.size()) {
        throw UsageError("neighbor graph does not match the state");
    }
    DistortionStats stats;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const auto& nb = graph.neighbors(i);
        const auto& rest = graph.initial_distances(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const auto j = static_cast<std::size_t>(nb[k]);
            if (j <= i) {
                continue;
            }
            const double now = euclidean_distance(state.current.point(i), state.current.point(j));
            const double rel = std::abs(now - rest[k]) / rest[k];
            stats.max = std::max(stats.max, rel);
            sum_sq += rel * rel;
            ++stats.pair_count;
        }
    }
    if (stats.pair_count > 0) {
        stats.rms = std::sqrt(sum_sq / static_cast<double>(stats.pair_count));
    }
    return stats;
}

TopologyReport adhesion_check(const ManifoldState& state, const NeighborGraph& graph,
                              double epsilon_adhesion) {
    if (graph.size() != state.current.size()) {
        throw UsageError("neighbor graph does not match the state");
    }
    if (!(epsilon_adhesion > 0.0)) {
        throw UsageError("adhesion threshold must be positive");
    }
    TopologyReport report;
    report.distortion = neighbor_distortion(state, graph);

    const double inf = std::numeric_limits<double>::infinity();
    report.min_neighbor_distance = inf;
    report.min_non_neighbor_distance = inf;
    report.min_pairwise_distance = inf;
    const std::size_t n = state.current.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(state.current.point(i), state.current.point(j));
            report.min_pairwise_distance = std::min(report.min_pairwise_distance, d);
            if (graph.is_neighbor(i, j)) {
                report.min_neighbor_distance = std::min(report.min_neighbor_distance, d);
            } else {
                report.min_non_neighbor_distance = std::min(report.min_non_neighbor_distance, d);
            }
        }
    }
    report.adhesion = report.min_pairwise_distance < epsilon_adhesion;

    const auto c0 = state.initial.centroid();
    const auto c1 = state.current.centroid();
    report.centroid_drift = euclidean_distance(c0, c1);
    return report;
}

SpectrumReport spectrum(const PointCloud& cloud, double variance_threshold) {
    if (cloud.size() < 2) {
        throw UsageError("spectrum requires at least 2 points");
    }
    if (!(variance_threshold > 0.0) || variance_threshold > 1.0) {
        throw UsageError("explained-variance threshold must be in (0, 1]");
    }
    const auto n = static_cast<Eigen::Index>(cloud.size());
    const auto dim = static_cast<Eigen::Index>(cloud.dim());
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        coords(cloud.data(), n, dim);
    const Eigen::RowVectorXd mean = coords.colwise().mean();
    const Eigen::MatrixXd centered = coords.rowwise() - mean;
    const Eigen::MatrixXd scatter = centered.transpose() * centered;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    if (solver.info() != Eigen::Success) {
        throw UsageError("spectrum eigendecomposition failed to converge");
    }

    SpectrumReport report;
    report.singular_values.resize(static_cast<std::size_t>(dim));
    report.explained_variance.assign(static_cast<std::size_t>(dim), 0.0);
    double total = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double lambda = std::max(solver.eigenvalues()(dim - 1 - k), 0.0);
        report.singular_values[static_cast<std::size_t>(k)] = std::sqrt(lambda);
        total += lambda;
    }
    if (total > 0.0) {
        double cumulative = 0.0;
        report.intrinsic_dimension = static_cast<int>(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double sigma = report.singular_values[static_cast<std::size_t>(k)];
            report.explained_variance[static_cast<std::size_t>(k)] = sigma * sigma / total;
            cumulative += report.explained_variance[static_cast<std::size_t>(k)];
            if (cumulative >= variance_threshold &&
                report.intrinsic_dimension == static_cast<int>(dim)) {
                report.intrinsic_dimension = static_cast<int>(k) + 1;
            }
        }
    } else {
        report.intrinsic_dimension = 0;
    }
    return report;
}

double flatness_ratio(const PointCloud& cloud, int d) {
    if (d < 1 || d >= cloud.dim()) {
        throw UsageError("flatness dimension must satisfy 1 <= d < " +
                         std::to_string(cloud.dim()) + ", got " + std::to_string(d));
    }
    const SpectrumReport report = spectrum(cloud);
    const double top = report.singular_values[0];
    if (top == 0.0) {
        return 0.0;
    }
    return report.singular_values[static_cast<std::size_t>(d)] / top;
}

double max_pairwise_extent(const PointCloud& cloud) {
    return min_max_pairwise(cloud).max;
}

} // namespace unfold
