#pragma once

#include <string>

#include "unfold/point_cloud.hpp"

namespace unfold {

/// Write one point per row, coordinates comma-separated, formatted with 17
/// significant digits (%.17g) so a round-trip through load_csv reproduces
/// every double bit-exactly. Throws IoError on any write failure.
void save_csv(const PointCloud& cloud, const std::string& path);

} // namespace unfold
