#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "unfold/errors.hpp"
#include "unfold/generators.hpp"
#include "unfold/metrics.hpp"
#include "unfold/neighbor_graph.hpp"
#include "unfold/point_cloud.hpp"

namespace {

using namespace unfold;

PointCloud random_cloud(std::mt19937_64& rng, std::size_t count, int dim) {
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    PointCloud cloud(dim);
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < count; ++i) {
        for (double& c : p) {
            c = coord(rng);
        }
        cloud.push_back(p);
    }
    return cloud;
}

// Closed-form eigenvalues of the 2x2 scatter matrix, the oracle for the
// planar spectrum. The subtraction in the low root limits its own
// absolute accuracy to ~eps * lambda_1, so comparisons are made on the
// eigenvalues relative to lambda_1.
std::vector<double> scatter_eigenvalues_2d(const PointCloud& cloud) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        mx += cloud.point(i)[0];
        my += cloud.point(i)[1];
    }
    mx /= static_cast<double>(cloud.size());
    my /= static_cast<double>(cloud.size());

    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double x = cloud.point(i)[0] - mx;
        const double y = cloud.point(i)[1] - my;
        a += x * x;
        b += x * y;
        c += y * y;
    }
    const double root = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
    const double hi = ((a + c) + root) / 2.0;
    const double lo = ((a + c) - root) / 2.0;
    return {std::max(hi, 0.0), std::max(lo, 0.0)};
}

TEST_CASE("distortion is zero on the initial cloud") {
    std::mt19937_64 rng(314);
    const PointCloud cloud = random_cloud(rng, 20, 3);
    const ManifoldState state(cloud);
    const NeighborGraph graph = build_neighbor_graph(cloud, 4.0);

    const DistortionStats stats = neighbor_distortion(state, graph);
    CHECK(stats.max == 0.0);
    CHECK(stats.rms == 0.0);
    CHECK(stats.pair_count == graph.pair_count());
}

TEST_CASE("distortion tracks a known stretch") {
    ManifoldState state(PointCloud{{0.0, 0.0}, {1.0, 0.0}});
    state.current = PointCloud{{0.0, 0.0}, {1.1, 0.0}};
    const NeighborGraph graph = build_neighbor_graph(state.initial, 2.0);

    const DistortionStats stats = neighbor_distortion(state, graph);
    CHECK(stats.pair_count == 1);
    CHECK(stats.max == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(stats.rms == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("an empty graph yields zero distortion with no pairs") {
    const ManifoldState state(PointCloud{{0.0, 0.0}, {1.0, 0.0}});
    const NeighborGraph graph = build_neighbor_graph(state.initial, 1e-6);
    const DistortionStats stats = neighbor_distortion(state, graph);
    CHECK(stats.pair_count == 0);
    CHECK(stats.max == 0.0);
    CHECK(stats.rms == 0.0);
}

TEST_CASE("adhesion check classifies pair categories") {
    ManifoldState state(PointCloud{{0.0, 0.0}, {1.0, 0.0}, {10.0, 0.0}});
    const NeighborGraph graph = build_neighbor_graph(state.initial, 2.0);

    TopologyReport report = adhesion_check(state, graph);
    CHECK(report.min_neighbor_distance == 1.0);
    CHECK(report.min_non_neighbor_distance == 9.0);
    CHECK(report.min_pairwise_distance == 1.0);
    CHECK_FALSE(report.adhesion);
    CHECK(report.centroid_drift == 0.0);
    CHECK(report.distortion.pair_count == 1);

    // The flag is monotone in the threshold.
    CHECK_FALSE(adhesion_check(state, graph, 0.5).adhesion);
    CHECK(adhesion_check(state, graph, 1.5).adhesion);

    // A rigid translation moves the centroid but no distance.
    for (std::size_t i = 0; i < state.current.size(); ++i) {
        state.current.mutable_point(i)[0] += 3.0;
        state.current.mutable_point(i)[1] += 4.0;
    }
    report = adhesion_check(state, graph);
    CHECK(report.centroid_drift == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(report.min_pairwise_distance == 1.0);
    CHECK(report.distortion.max == 0.0);

    CHECK_THROWS_AS(adhesion_check(state, graph, 0.0), UsageError);
    const NeighborGraph mismatched = build_neighbor_graph(PointCloud{{0.0, 0.0}}, 1.0);
    CHECK_THROWS_AS(adhesion_check(state, mismatched), UsageError);
    CHECK_THROWS_AS(neighbor_distortion(state, mismatched), UsageError);
}

TEST_CASE("empty pair categories report an infinite minimum") {
    const ManifoldState joined(PointCloud{{0.0, 0.0}, {1.0, 0.0}});
    const TopologyReport all_neighbors =
        adhesion_check(joined, build_neighbor_graph(joined.initial, 2.0));
    CHECK(std::isinf(all_neighbors.min_non_neighbor_distance));
    CHECK(all_neighbors.min_neighbor_distance == 1.0);

    const TopologyReport no_neighbors =
        adhesion_check(joined, build_neighbor_graph(joined.initial, 1e-6));
    CHECK(std::isinf(no_neighbors.min_neighbor_distance));
    CHECK(no_neighbors.min_non_neighbor_distance == 1.0);
}

TEST_CASE("adhesion fires when two points fuse") {
    ManifoldState state(PointCloud{{0.0, 0.0}, {1.0, 0.0}, {10.0, 0.0}});
    state.current = PointCloud{{0.0, 0.0}, {1e-12, 0.0}, {10.0, 0.0}};
    const NeighborGraph graph = build_neighbor_graph(state.initial, 2.0);
    const TopologyReport report = adhesion_check(state, graph);
    CHECK(report.adhesion);
    CHECK(report.min_pairwise_distance == doctest::Approx(1e-12));
}

TEST_CASE("spectrum matches the closed-form planar oracle") {
    std::mt19937_64 rng(1618);
    std::uniform_int_distribution<std::size_t> count_dist(2, 30);
    for (int trial = 0; trial < 30; ++trial) {
        const PointCloud cloud = random_cloud(rng, count_dist(rng), 2);
        const auto expected = scatter_eigenvalues_2d(cloud);
        const SpectrumReport report = spectrum(cloud);
        REQUIRE(report.singular_values.size() == 2);
        const double scale = std::max(expected[0], 1e-30);
        for (int k = 0; k < 2; ++k) {
            const double lambda = report.singular_values[static_cast<std::size_t>(k)] *
                                  report.singular_values[static_cast<std::size_t>(k)];
            CHECK(std::abs(lambda - expected[static_cast<std::size_t>(k)]) / scale < 1e-12);
        }
        CHECK(report.singular_values[0] >= report.singular_values[1]);
    }
}

TEST_CASE("spectrum flags flat clouds") {
    // Collinear points: one direction carries all the variance.
    PointCloud line(2);
    for (int i = 0; i < 10; ++i) {
        const std::vector<double> p{static_cast<double>(i), 2.0 * i + 1.0};
        line.push_back(p);
    }
    const SpectrumReport flat = spectrum(line);
    CHECK(flat.intrinsic_dimension == 1);
    CHECK(flat.singular_values[1] <= 1e-7 * flat.singular_values[0]);
    CHECK(flatness_ratio(line, 1) <= 1e-7);

    // A planar grid in 3-space is 2-dimensional at the 0.99 threshold.
    PointCloud grid(3);
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
            const std::vector<double> p{static_cast<double>(x), static_cast<double>(y), 0.0};
            grid.push_back(p);
        }
    }
    const SpectrumReport planar = spectrum(grid);
    CHECK(planar.intrinsic_dimension == 2);
    CHECK(planar.singular_values[2] <= 1e-7 * planar.singular_values[0]);
    CHECK(flatness_ratio(grid, 2) <= 1e-7);

    // A repeated point has no spread at all.
    const PointCloud fused{{1.0, 1.0}, {1.0, 1.0}};
    const SpectrumReport none = spectrum(fused);
    CHECK(none.intrinsic_dimension == 0);
    CHECK(none.singular_values[0] == 0.0);
    CHECK(flatness_ratio(fused, 1) == 0.0);
}

TEST_CASE("explained variance ratios are ordered and sum to one") {
    std::mt19937_64 rng(2718);
    const PointCloud cloud = random_cloud(rng, 40, 4);
    const SpectrumReport report = spectrum(cloud);
    double total = 0.0;
    for (std::size_t k = 0; k < report.explained_variance.size(); ++k) {
        total += report.explained_variance[k];
        if (k > 0) {
            CHECK(report.singular_values[k] <= report.singular_values[k - 1]);
        }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("intrinsic dimension respects the variance threshold") {
    // Axis-aligned cross with variance split 0.9 / 0.1.
    const PointCloud cross{{3.0, 0.0}, {-3.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    CHECK(spectrum(cross, 0.89).intrinsic_dimension == 1);
    CHECK(spectrum(cross, 0.91).intrinsic_dimension == 2);
    CHECK(spectrum(cross, 1.0).intrinsic_dimension == 2);

    CHECK_THROWS_AS(spectrum(cross, 0.0), UsageError);
    CHECK_THROWS_AS(spectrum(cross, -0.5), UsageError);
    CHECK_THROWS_AS(spectrum(cross, 1.5), UsageError);
    CHECK_THROWS_AS(spectrum(PointCloud{{1.0, 2.0}}), UsageError);
}

TEST_CASE("spectrum is invariant under rigid motions and reindexing") {
    std::mt19937_64 rng(577);
    const PointCloud cloud = random_cloud(rng, 25, 2);
    const SpectrumReport base = spectrum(cloud);
    const double scale = base.singular_values[0];

    PointCloud translated(2);
    PointCloud rotated(2);
    PointCloud reversed(2);
    const double angle = 0.7;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double x = cloud.point(i)[0];
        const double y = cloud.point(i)[1];
        const std::vector<double> t{x + 100.0, y - 40.0};
        translated.push_back(t);
        const std::vector<double> q{cs * x - sn * y, sn * x + cs * y};
        rotated.push_back(q);
        reversed.push_back(cloud.point(cloud.size() - 1 - i));
    }
    for (const PointCloud* variant : {&translated, &rotated, &reversed}) {
        const SpectrumReport moved = spectrum(*variant);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(std::abs(moved.singular_values[k] - base.singular_values[k]) / scale < 1e-9);
        }
    }

    // Same input, same bits.
    const SpectrumReport again = spectrum(cloud);
    CHECK(again.singular_values == base.singular_values);
    CHECK(again.explained_variance == base.explained_variance);
}

TEST_CASE("flatness ratio is bounded and monotone in the cut") {
    std::mt19937_64 rng(4242);
    const PointCloud cloud = random_cloud(rng, 30, 4);
    double prev = 1.0;
    for (int d = 1; d < 4; ++d) {
        const double flat = flatness_ratio(cloud, d);
        CHECK(flat >= 0.0);
        CHECK(flat <= 1.0);
        CHECK(flat <= prev);
        prev = flat;
    }
    CHECK_THROWS_AS(flatness_ratio(cloud, 0), UsageError);
    CHECK_THROWS_AS(flatness_ratio(cloud, 4), UsageError);
}

TEST_CASE("half-circle flatness starts at its frozen value") {
    const PointCloud arc = gen_half_circle(69.0, 129);
    const double flat = flatness_ratio(arc, 1);
    CHECK(flat == doctest::Approx(0.4391).epsilon(2e-3));
    CHECK(spectrum(arc).intrinsic_dimension == 2);

    // The ratio is scale-free.
    const PointCloud unit_arc = gen_half_circle(1.0, 129);
    CHECK(std::abs(flatness_ratio(unit_arc, 1) - flat) < 1e-12);

    // And the oracle agrees.
    const auto expected = scatter_eigenvalues_2d(arc);
    CHECK(flat == doctest::Approx(std::sqrt(expected[1] / expected[0])).epsilon(1e-12));
}

TEST_CASE("max_pairwise_extent returns the diameter") {
    const PointCloud cloud{{0.0, 0.0}, {3.0, 4.0}, {1.0, 1.0}};
    CHECK(max_pairwise_extent(cloud) == 5.0);
}

} // namespace
