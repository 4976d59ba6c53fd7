#include "unfold/generators.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "unfold/errors.hpp"

namespace unfold {

PointCloud gen_half_circle(double radius, int count) {
    if (!(radius > 0.0)) {
        throw UsageError("half-circle radius must be positive, got " + std::to_string(radius));
    }
    if (count < 2) {
        throw UsageError("half-circle needs at least 2 points, got " + std::to_string(count));
    }
    PointCloud cloud(2);
    cloud.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double theta = static_cast<double>(k) * M_PI / static_cast<double>(count - 1);
        const std::array<double, 2> p{radius * std::cos(theta), radius * std::sin(theta)};
        cloud.push_back(p);
    }
    return cloud;
}

PointCloud gen_spiral(int count) {
    if (count < 2) {
        throw UsageError("spiral needs at least 2 points, got " + std::to_string(count));
    }
    PointCloud cloud(2);
    cloud.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = -1.0 + 6.0 * static_cast<double>(k) / static_cast<double>(count - 1);
        const double arm = t + 10.0;
        const std::array<double, 2> p{arm * std::cos(M_PI * t), arm * std::sin(M_PI * t)};
        cloud.push_back(p);
    }
    return cloud;
}

PointCloud gen_s_curve(int grid_u, int grid_v, double scale) {
    if (grid_u < 2 || grid_v < 2) {
        throw UsageError("s-curve grid must be at least 2x2, got " + std::to_string(grid_u) +
                         "x" + std::to_string(grid_v));
    }
    if (!(scale > 0.0)) {
        throw UsageError("s-curve scale must be positive, got " + std::to_string(scale));
    }
    PointCloud cloud(3);
    cloud.reserve(static_cast<std::size_t>(grid_u) * static_cast<std::size_t>(grid_v));
    for (int i = 0; i < grid_u; ++i) {
        // Centered form so odd grids sample u = 0 exactly (the straight row).
        const double u = 3.0 * M_PI *
                         (static_cast<double>(i) - 0.5 * static_cast<double>(grid_u - 1)) /
                         static_cast<double>(grid_u - 1);
        const double sign_u = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        for (int j = 0; j < grid_v; ++j) {
            const double v = 2.0 * static_cast<double>(j) / static_cast<double>(grid_v - 1);
            const std::array<double, 3> p{scale * std::sin(u), scale * v,
                                          scale * sign_u * (std::cos(u) - 1.0)};
            cloud.push_back(p);
        }
    }
    return cloud;
}

namespace {

std::string_view trim(std::string_view field) {
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) {
        field.remove_prefix(1);
    }
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) {
        field.remove_suffix(1);
    }
    return field;
}

bool parse_double(std::string_view field, double& value) {
    field = trim(field);
    if (field.empty()) {
        return false;
    }
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

PointCloud load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    PointCloud cloud;
    std::vector<double> row;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        row.clear();
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = 0.0;
            if (!parse_double(fields[c], value)) {
                if (header_allowed) {
                    numeric = false;
                    break;
                }
                throw IngestError(path + ": row " + std::to_string(line_no) + ", column " +
                                  std::to_string(c + 1) + ": not a number: '" +
                                  std::string(trim(fields[c])) + "'");
            }
            if (!std::isfinite(value)) {
                throw IngestError(path + ": row " + std::to_string(line_no) + ", column " +
                                  std::to_string(c + 1) + ": non-finite value");
            }
            row.push_back(value);
        }
        if (!numeric) {
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        if (!saw_data) {
            cloud = PointCloud(static_cast<int>(fields.size()));
            saw_data = true;
        } else if (row.size() != static_cast<std::size_t>(cloud.dim())) {
            throw IngestError(path + ": row " + std::to_string(line_no) + ": expected " +
                              std::to_string(cloud.dim()) + " columns, got " +
                              std::to_string(row.size()));
        }
        cloud.push_back(row);
    }
    if (in.bad()) {
        throw IoError("read failure on " + path);
    }
    if (!saw_data) {
        throw IngestError(path + ": no data rows");
    }
    return cloud;
}

} // namespace unfold
