#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "unfold/errors.hpp"

namespace unfold::cli {

namespace {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Fit {
    double scale = 1.0;
    Vec2 offset; // canvas position of data-space origin after fitting
};

/// Uniform scale + offset that maps the bounding box of `points` into the
/// canvas with a margin, y flipped so data-y grows upward.
Fit fit_to_canvas(const std::vector<Vec2>& points, int canvas) {
    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const Vec2& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double margin = 0.06 * canvas;
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    const double span = std::max(span_x, span_y);
    Fit fit;
    fit.scale = span > 0.0 ? (canvas - 2.0 * margin) / span : 1.0;
    const double cx = 0.5 * (min_x + max_x);
    const double cy = 0.5 * (min_y + max_y);
    fit.offset.x = 0.5 * canvas - fit.scale * cx;
    fit.offset.y = 0.5 * canvas + fit.scale * cy;
    return fit;
}

Vec2 to_canvas(const Vec2& p, const Fit& fit) {
    return {fit.offset.x + fit.scale * p.x, fit.offset.y - fit.scale * p.y};
}

void append(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

std::string render(const std::vector<Vec2>& points, const std::vector<Vec2>& tips,
                   int canvas) {
    std::vector<Vec2> extent = points;
    extent.insert(extent.end(), tips.begin(), tips.end());
    const Fit fit = fit_to_canvas(extent, canvas);

    std::string out;
    out.reserve(128 + 96 * points.size() + 192 * tips.size());
    append(out,
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
           "viewBox=\"0 0 %d %d\">\n",
           canvas, canvas, canvas, canvas);
    append(out, "<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", canvas, canvas);

    if (!tips.empty()) {
        out += "<g stroke=\"#c0392b\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vec2 a = to_canvas(points[i], fit);
            const Vec2 b = to_canvas(tips[i], fit);
            append(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", a.x, a.y,
                   b.x, b.y);
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            const double len = std::hypot(dx, dy);
            if (len > 1e-9) {
                const double ux = dx / len;
                const double uy = dy / len;
                const double head = std::min(6.0, 0.4 * len);
                append(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", b.x,
                       b.y, b.x - head * (ux + 0.5 * uy), b.y - head * (uy - 0.5 * ux));
                append(out, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", b.x,
                       b.y, b.x - head * (ux - 0.5 * uy), b.y - head * (uy + 0.5 * ux));
            }
        }
        out += "</g>\n";
    }

    out += "<g fill=\"#1f6fb2\">\n";
    for (const Vec2& p : points) {
        const Vec2 c = to_canvas(p, fit);
        append(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\"/>\n", c.x, c.y);
    }
    out += "</g>\n</svg>\n";
    return out;
}

Vec2 planar(const PointCloud& cloud, std::size_t i) {
    const auto p = cloud.point(i);
    return {p[0], cloud.dim() >= 2 ? p[1] : 0.0};
}

} // namespace

std::string render_scatter_2d(const PointCloud& cloud, const PointCloud* field,
                              const PlotOptions& options) {
    if (cloud.empty()) {
        throw UsageError("cannot plot an empty cloud");
    }
    std::vector<Vec2> points(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        points[i] = planar(cloud, i);
    }

    std::vector<Vec2> tips;
    if (field != nullptr) {
        if (field->size() != cloud.size()) {
            throw UsageError("field arrows do not match the cloud");
        }
        double vmax = 0.0;
        for (std::size_t i = 0; i < field->size(); ++i) {
            const Vec2 v = planar(*field, i);
            vmax = std::max(vmax, std::hypot(v.x, v.y));
        }
        double min_x = points[0].x, max_x = points[0].x;
        double min_y = points[0].y, max_y = points[0].y;
        for (const Vec2& p : points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        const double span = std::max(max_x - min_x, max_y - min_y);
        // Longest arrow spans ~8% of the cloud's extent.
        const double arrow_scale = vmax > 0.0 ? 0.08 * std::max(span, 1.0) / vmax : 0.0;
        tips.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vec2 v = planar(*field, i);
            tips[i] = {points[i].x + arrow_scale * v.x, points[i].y + arrow_scale * v.y};
        }
    }
    return render(points, tips, options.canvas);
}

std::string render_perspective_3d(const PointCloud& cloud, const PlotOptions& options) {
    if (cloud.empty() || cloud.dim() < 3) {
        throw UsageError("perspective view needs a 3-D cloud");
    }
    const auto center = cloud.centroid();
    const double az = options.azimuth_deg * M_PI / 180.0;
    const double el = options.elevation_deg * M_PI / 180.0;
    // Camera basis: right, up, and the unit vector toward the viewer.
    const double view[3] = {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                            std::sin(el)};
    const double right[3] = {-std::sin(az), std::cos(az), 0.0};
    const double up[3] = {-std::sin(el) * std::cos(az), -std::sin(el) * std::sin(az),
                          std::cos(el)};

    double radius = 0.0;
    std::vector<double> centered(cloud.size() * 3);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        double sq = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double d = p[static_cast<std::size_t>(c)] - center[static_cast<std::size_t>(c)];
            centered[i * 3 + static_cast<std::size_t>(c)] = d;
            sq += d * d;
        }
        radius = std::max(radius, std::sqrt(sq));
    }
    const double camera_distance = radius > 0.0 ? 4.0 * radius : 1.0;

    std::vector<Vec2> points(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double* p = &centered[i * 3];
        const double u = p[0] * right[0] + p[1] * right[1] + p[2] * right[2];
        const double v = p[0] * up[0] + p[1] * up[1] + p[2] * up[2];
        const double toward = p[0] * view[0] + p[1] * view[1] + p[2] * view[2];
        const double depth = camera_distance - toward;
        points[i] = {u * camera_distance / depth, v * camera_distance / depth};
    }
    return render(points, {}, options.canvas);
}

std::string render_top_view_3d(const PointCloud& cloud, const PlotOptions& options) {
    if (cloud.empty() || cloud.dim() < 3) {
        throw UsageError("top view needs a 3-D cloud");
    }
    if (options.top_axis < 0 || options.top_axis > 2) {
        throw UsageError("top-view axis must be 0, 1, or 2");
    }
    std::vector<Vec2> points(cloud.size());
    int keep[2];
    int k = 0;
    for (int c = 0; c < 3; ++c) {
        if (c != options.top_axis) {
            keep[k++] = c;
        }
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        points[i] = {p[static_cast<std::size_t>(keep[0])], p[static_cast<std::size_t>(keep[1])]};
    }
    return render(points, {}, options.canvas);
}

} // namespace unfold::cli
