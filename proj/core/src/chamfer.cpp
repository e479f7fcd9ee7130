#include "voxmerge/chamfer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

namespace {

constexpr std::size_t kLeafSize = 8;

double squared_distance(const Vec3& p, const Vec3& q) {
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    const double dz = p[2] - q[2];
    return dx * dx + dy * dy + dz * dz;
}

}  // namespace

KdTree::KdTree(std::span<const Vec3> points)
    : points_(points.begin(), points.end()), order_(points.size()), split_axis_(points.size(), 0) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    build(0, order_.size());
}

void KdTree::build(std::size_t lo, std::size_t hi) {
    if (hi - lo <= kLeafSize) {
        return;
    }
    Vec3 mn{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 mx{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()};
    for (std::size_t i = lo; i < hi; ++i) {
        const Vec3& p = points_[order_[i]];
        for (int k = 0; k < 3; ++k) {
            mn[k] = std::min(mn[k], p[k]);
            mx[k] = std::max(mx[k], p[k]);
        }
    }
    std::uint8_t axis = 0;
    for (std::uint8_t k = 1; k < 3; ++k) {
        if (mx[k] - mn[k] > mx[axis] - mn[axis]) {
            axis = k;
        }
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](std::size_t i, std::size_t j) {
                         return points_[i][axis] < points_[j][axis];
                     });
    split_axis_[mid] = axis;
    build(lo, mid);
    build(mid + 1, hi);
}

void KdTree::search(std::size_t lo, std::size_t hi, const Vec3& q, Hit& best) const {
    if (hi - lo <= kLeafSize) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = squared_distance(points_[order_[i]], q);
            if (d < best.squared_distance) {
                best = {order_[i], d};
            }
        }
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const Vec3& pivot = points_[order_[mid]];
    const double d = squared_distance(pivot, q);
    if (d < best.squared_distance) {
        best = {order_[mid], d};
    }
    const int axis = split_axis_[mid];
    const double diff = q[axis] - pivot[axis];
    const bool left_first = diff < 0.0;
    if (left_first) {
        search(lo, mid, q, best);
    } else {
        search(mid + 1, hi, q, best);
    }
    // Every point on the far side is at least |diff| away along the axis.
    if (diff * diff < best.squared_distance) {
        if (left_first) {
            search(mid + 1, hi, q, best);
        } else {
            search(lo, mid, q, best);
        }
    }
}

KdTree::Hit KdTree::nearest(const Vec3& q) const {
    if (points_.empty()) {
        throw PreconditionError("nearest-neighbor query on an empty index");
    }
    Hit best{0, std::numeric_limits<double>::infinity()};
    search(0, order_.size(), q, best);
    return best;
}

double one_sided_chamfer(const PointCloud& from, const KdTree& to) {
    std::vector<double> nearest(from.size());
    parallel_for(0, from.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            nearest[i] = to.nearest(from.points[i]).squared_distance;
        }
    });
    double sum = 0.0;
    for (double d : nearest) {
        sum += d;
    }
    return sum / static_cast<double>(from.size());
}

double chamfer(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) {
        throw PreconditionError("chamfer distance needs two non-empty point clouds");
    }
    const KdTree tree_a(a.points);
    const KdTree tree_b(b.points);
    return one_sided_chamfer(a, tree_b) + one_sided_chamfer(b, tree_a);
}

}  // namespace voxmerge
