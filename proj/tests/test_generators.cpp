#include <cmath>
#include <limits>

#include "doctest.h"
#include "unfold/errors.hpp"
#include "unfold/generators.hpp"
#include "unfold/point_cloud.hpp"

namespace {

using namespace unfold;

TEST_CASE("half circle endpoints land on the diameter") {
    const PointCloud arc = gen_half_circle(69.0, 129);
    REQUIRE(arc.size() == 129);
    REQUIRE(arc.dim() == 2);

    CHECK(arc.point(0)[0] == 69.0);
    CHECK(arc.point(0)[1] == 0.0);
    CHECK(arc.point(128)[0] == doctest::Approx(-69.0).epsilon(1e-15));
    CHECK(std::abs(arc.point(128)[1]) < 1e-12);

    for (std::size_t k = 0; k < arc.size(); ++k) {
        const double norm = std::hypot(arc.point(k)[0], arc.point(k)[1]);
        CHECK(norm == doctest::Approx(69.0).epsilon(1e-12));
        CHECK(arc.point(k)[1] >= 0.0);
    }
}

TEST_CASE("half circle chords are uniform and match the closed form") {
    const PointCloud arc = gen_half_circle(69.0, 129);
    const double chord = 2.0 * 69.0 * std::sin(M_PI / 256.0);
    for (std::size_t k = 0; k + 1 < arc.size(); ++k) {
        const double d = euclidean_distance(arc.point(k), arc.point(k + 1));
        CHECK(d == doctest::Approx(chord).epsilon(1e-9));
    }
    // The heuristic the stock experiment leans on: twice the chord stays
    // below the second-ring distance, so r = 3.36 links each point to
    // exactly its two arc neighbors.
    CHECK(chord < 3.36);
    CHECK(3.36 < euclidean_distance(arc.point(0), arc.point(2)));
}

TEST_CASE("spiral arm radius equals the parameter offset") {
    const PointCloud spiral = gen_spiral(600);
    REQUIRE(spiral.size() == 600);
    REQUIRE(spiral.dim() == 2);

    CHECK(spiral.point(0)[0] == doctest::Approx(-9.0).epsilon(1e-15));
    CHECK(std::abs(spiral.point(0)[1]) < 1e-12);
    CHECK(spiral.point(599)[0] == doctest::Approx(-15.0).epsilon(1e-15));
    CHECK(std::abs(spiral.point(599)[1]) < 1e-12);

    for (std::size_t k = 0; k < spiral.size(); ++k) {
        const double t = -1.0 + 6.0 * static_cast<double>(k) / 599.0;
        const double norm = std::hypot(spiral.point(k)[0], spiral.point(k)[1]);
        CHECK(norm == doctest::Approx(t + 10.0).epsilon(1e-12));
    }
}

TEST_CASE("s-curve grid hits the analytic rows") {
    const double scale = 10.0;
    const PointCloud sheet = gen_s_curve(25, 5, scale);
    REQUIRE(sheet.size() == 125);
    REQUIRE(sheet.dim() == 3);

    // Odd grid: row i = 12 samples u = 0, the straight segment.
    for (int j = 0; j < 5; ++j) {
        const auto p = sheet.point(static_cast<std::size_t>(12 * 5 + j));
        CHECK(p[0] == 0.0);
        CHECK(p[1] == doctest::Approx(scale * 2.0 * j / 4.0).epsilon(1e-15));
        CHECK(p[2] == 0.0);
    }

    // (grid_u - 1) divisible by 6: rows i = 4 and i = 20 sample u = -pi
    // and u = pi, the z extremes of the two bends.
    double z_min = std::numeric_limits<double>::infinity();
    double z_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sheet.size(); ++k) {
        z_min = std::min(z_min, sheet.point(k)[2]);
        z_max = std::max(z_max, sheet.point(k)[2]);
    }
    CHECK(z_min == doctest::Approx(-2.0 * scale).epsilon(1e-12));
    CHECK(z_max == doctest::Approx(2.0 * scale).epsilon(1e-12));
    CHECK(sheet.point(4 * 5)[2] == doctest::Approx(2.0 * scale).epsilon(1e-12));
    CHECK(sheet.point(20 * 5)[2] == doctest::Approx(-2.0 * scale).epsilon(1e-12));

    // Row-major in u: every point of a row shares the u coordinate pair.
    for (int i = 0; i < 25; ++i) {
        const auto first = sheet.point(static_cast<std::size_t>(i * 5));
        for (int j = 1; j < 5; ++j) {
            const auto p = sheet.point(static_cast<std::size_t>(i * 5 + j));
            CHECK(p[0] == first[0]);
            CHECK(p[2] == first[2]);
        }
    }
}

TEST_CASE("stock 24x15 sheet spans the expected box") {
    const PointCloud sheet = gen_s_curve(24, 15, 10.0);
    REQUIRE(sheet.size() == 360);

    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    double z_min = std::numeric_limits<double>::infinity();
    double z_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sheet.size(); ++k) {
        y_min = std::min(y_min, sheet.point(k)[1]);
        y_max = std::max(y_max, sheet.point(k)[1]);
        z_min = std::min(z_min, sheet.point(k)[2]);
        z_max = std::max(z_max, sheet.point(k)[2]);
    }
    CHECK(y_min == 0.0);
    CHECK(y_max == 20.0);
    // An even grid straddles u = +-pi, so the bends stop just short of
    // the analytic +-2 * scale.
    CHECK(z_min > -20.0);
    CHECK(z_min < -19.9);
    CHECK(z_max < 20.0);
    CHECK(z_max > 19.9);
}

TEST_CASE("generators reject invalid parameters") {
    CHECK_THROWS_AS(gen_half_circle(0.0, 10), UsageError);
    CHECK_THROWS_AS(gen_half_circle(-1.0, 10), UsageError);
    CHECK_THROWS_AS(gen_half_circle(1.0, 1), UsageError);
    CHECK_THROWS_AS(gen_spiral(1), UsageError);
    CHECK_THROWS_AS(gen_s_curve(1, 5, 1.0), UsageError);
    CHECK_THROWS_AS(gen_s_curve(5, 1, 1.0), UsageError);
    CHECK_THROWS_AS(gen_s_curve(5, 5, 0.0), UsageError);
}

TEST_CASE("generators are deterministic") {
    CHECK(gen_half_circle(69.0, 129) == gen_half_circle(69.0, 129));
    CHECK(gen_spiral(600) == gen_spiral(600));
    CHECK(gen_s_curve(24, 15, 10.0) == gen_s_curve(24, 15, 10.0));
}

} // namespace
