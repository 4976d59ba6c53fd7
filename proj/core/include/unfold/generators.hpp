#pragma once

#include <string>

#include "unfold/point_cloud.hpp"

namespace unfold {

/// Half circle of `count` points on a circle of radius `radius` in the
/// plane: p_k = (radius*cos(theta_k), radius*sin(theta_k)) with
/// theta_k = k*pi/(count-1), k = 0..count-1. Endpoints land exactly on the
/// diameter (up to sin(pi) rounding). Requires radius > 0 and count >= 2.
PointCloud gen_half_circle(double radius, int count);

/// Planar Archimedean-style spiral sampled uniformly in the parameter:
/// p(t) = ((t+10)*cos(pi*t), (t+10)*sin(pi*t)) for t in [-1, 5], `count`
/// samples including both ends. Three full turns, arm spacing 2.
/// Requires count >= 2.
PointCloud gen_spiral(int count);

/// S-shaped sheet in 3-D: a grid_u x grid_v grid over u in [-3pi/2, 3pi/2],
/// v in [0, 2], mapped to scale * (sin u, v, sign(u)*(cos u - 1)). The
/// surface is developable (isometric to a flat rectangle), which is what
/// makes it flattenable without stretch. Row-major in u (u varies slowest).
/// Requires grid_u >= 2, grid_v >= 2, scale > 0.
PointCloud gen_s_curve(int grid_u, int grid_v, double scale);

/// Parse a CSV of points, one point per row, coordinates as decimal
/// floats. A single leading header row is detected (any field that is not
/// a number) and skipped. Every data row must have the same column count;
/// no limit on the ambient dimension. Blank lines are ignored. Throws
/// IngestError with a 1-based row and column location on ragged rows,
/// non-numeric fields, non-finite values, or an empty file, and IoError if
/// the file cannot be opened.
PointCloud load_csv(const std::string& path);

} // namespace unfold
