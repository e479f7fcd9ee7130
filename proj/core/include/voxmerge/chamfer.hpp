#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "voxmerge/mesh.hpp"

namespace voxmerge {

/// Chamfer values are reported multiplied by this factor.
inline constexpr double kChamferReportScale = 1e3;

/// Exact nearest-neighbor index over a fixed point set (k-d tree, median
/// splits). Queries are read-only and may run concurrently.
class KdTree {
public:
    explicit KdTree(std::span<const Vec3> points);

    std::size_t size() const noexcept { return points_.size(); }

    struct Hit {
        std::size_t index;
        double squared_distance;
    };
    /// Nearest stored point to q. The tree must be non-empty.
    Hit nearest(const Vec3& q) const;

private:
    void build(std::size_t lo, std::size_t hi);
    void search(std::size_t lo, std::size_t hi, const Vec3& q, Hit& best) const;

    std::vector<Vec3> points_;
    std::vector<std::size_t> order_;
    std::vector<std::uint8_t> split_axis_;
};

/// Mean squared nearest-neighbor distance from every point of `from` to `to`.
double one_sided_chamfer(const PointCloud& from, const KdTree& to);

/// Symmetric squared-distance chamfer:
/// mean_p min_q |p-q|^2 + mean_q min_p |q-p|^2.
/// Throws PreconditionError on an empty cloud.
double chamfer(const PointCloud& a, const PointCloud& b);

}  // namespace voxmerge
