#include "unfold/point_cloud.hpp"

#include <cmath>
#include <string>

#include "unfold/errors.hpp"

namespace unfold {

PointCloud::PointCloud(int dim) : dim_(dim) {
    if (dim < 1) {
        throw UsageError("point dimension must be >= 1, got " + std::to_string(dim));
    }
}

PointCloud::PointCloud(int dim, std::vector<double> data) : PointCloud(dim) {
    if (data.size() % static_cast<std::size_t>(dim) != 0) {
        throw UsageError("flat coordinate array of size " + std::to_string(data.size()) +
                         " is not a multiple of dimension " + std::to_string(dim));
    }
    data_ = std::move(data);
}

PointCloud::PointCloud(std::initializer_list<std::initializer_list<double>> rows) {
    for (const auto& row : rows) {
        if (dim_ == 0) {
            dim_ = static_cast<int>(row.size());
            if (dim_ < 1) {
                throw UsageError("point dimension must be >= 1");
            }
            data_.reserve(rows.size() * row.size());
        } else if (row.size() != static_cast<std::size_t>(dim_)) {
            throw UsageError("all points must have the same dimension");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

void PointCloud::push_back(std::span<const double> coords) {
    if (dim_ == 0 || coords.size() != static_cast<std::size_t>(dim_)) {
        throw UsageError("cannot append a " + std::to_string(coords.size()) +
                         "-dimensional point to a cloud of dimension " + std::to_string(dim_));
    }
    data_.insert(data_.end(), coords.begin(), coords.end());
}

std::int64_t PointCloud::first_non_finite() const {
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            return static_cast<std::int64_t>(k / static_cast<std::size_t>(dim_));
        }
    }
    return -1;
}

std::vector<double> PointCloud::centroid() const {
    if (empty()) {
        throw UsageError("centroid of an empty cloud is undefined");
    }
    std::vector<double> mean(static_cast<std::size_t>(dim_), 0.0);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = point(i);
        for (int c = 0; c < dim_; ++c) {
            mean[static_cast<std::size_t>(c)] += p[static_cast<std::size_t>(c)];
        }
    }
    for (double& m : mean) {
        m /= static_cast<double>(n);
    }
    return mean;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw UsageError("distance between vectors of dimension " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " is undefined");
    }
    double sq = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        sq += d * d;
    }
    return std::sqrt(sq);
}

DistanceRange min_max_pairwise(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n < 2) {
        throw UsageError("pairwise distances require at least 2 points");
    }
    DistanceRange range{euclidean_distance(cloud.point(0), cloud.point(1)),
                        euclidean_distance(cloud.point(0), cloud.point(1))};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(cloud.point(i), cloud.point(j));
            if (d < range.min) range.min = d;
            if (d > range.max) range.max = d;
        }
    }
    return range;
}

} // namespace unfold
