#pragma once

#include <optional>
#include <string>

#include "unfold/point_cloud.hpp"

namespace unfold::cli {

struct PlotOptions {
    int canvas = 800;
    /// Axis index the 3-D top view looks down (dropped from the
    /// projection).
    int top_axis = 2;
    /// Perspective view direction for 3-D clouds, degrees.
    double azimuth_deg = 35.0;
    double elevation_deg = 25.0;
};

/// Scatter plot of a 2-D cloud (or a 1-D cloud on the x-axis), centered
/// and uniformly scaled to fit. When `field` is given, one arrow per
/// point shows the deforming vector, scaled so the longest arrow spans a
/// readable fraction of the canvas.
std::string render_scatter_2d(const PointCloud& cloud, const PointCloud* field,
                              const PlotOptions& options);

/// Perspective projection of a 3-D cloud (azimuth/elevation camera with
/// mild foreshortening). Clouds of dimension > 3 are projected to their
/// first three axes by the caller.
std::string render_perspective_3d(const PointCloud& cloud, const PlotOptions& options);

/// Orthographic top view of a 3-D cloud: drop `top_axis`, plot the other
/// two axes in index order.
std::string render_top_view_3d(const PointCloud& cloud, const PlotOptions& options);

} // namespace unfold::cli
