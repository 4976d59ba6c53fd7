#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace unfold {

/// A discretized manifold: N points with n-dimensional embedded-space
/// coordinates, stored row-major. Point identity is the positional index
/// 0..N-1 and stays stable for the life of a run.
class PointCloud {
public:
    PointCloud() = default;

    /// Empty cloud of the given embedding dimension (n >= 1).
    explicit PointCloud(int dim);

    /// Cloud from flat row-major coordinates; data.size() must be a
    /// multiple of dim.
    PointCloud(int dim, std::vector<double> data);

    /// Convenience for literals: {{0,0},{3,4}}.
    PointCloud(std::initializer_list<std::initializer_list<double>> rows);

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ > 0 ? data_.size() / dim_ : 0; }
    bool empty() const { return data_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    std::span<double> mutable_point(std::size_t i) {
        return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }

    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }

    void push_back(std::span<const double> coords);
    void reserve(std::size_t n) { data_.reserve(n * dim_); }

    /// Index of the first point with a non-finite coordinate, or -1.
    std::int64_t first_non_finite() const;

    /// Arithmetic mean of the points.
    std::vector<double> centroid() const;

    bool operator==(const PointCloud& other) const = default;

private:
    int dim_ = 0;
    std::vector<double> data_;
};

/// Euclidean distance between two coordinate vectors of equal dimension.
/// Throws UsageError on dimension mismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

struct DistanceRange {
    double min = 0.0;
    double max = 0.0;
};

/// Min/max over all unordered point pairs (O(N^2)); requires N >= 2.
DistanceRange min_max_pairwise(const PointCloud& cloud);

} // namespace unfold
