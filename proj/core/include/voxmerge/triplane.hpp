#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

enum class TriplaneAggregation { concat, sum, mean };

TriplaneAggregation triplane_aggregation_from_string(std::string_view name);
std::string_view to_string(TriplaneAggregation mode);

/// Three axis-aligned feature planes over [-1,1]^2.
///
/// Each plane is R x R x F' floats, stored channel-fastest, then the plane's
/// first axis, then its second: offset = (v * R + u) * F' + c. The planes
/// are XY (u=x, v=y), XZ (u=x, v=z) and YZ (u=y, v=z). Texel centers follow
/// the voxel convention: -1 + (2i + 1) / R.
class TriplaneSet {
public:
    enum Plane : std::size_t { xy = 0, xz = 1, yz = 2 };

    TriplaneSet() = default;
    TriplaneSet(std::size_t resolution, std::size_t channels,
                TriplaneAggregation mode = TriplaneAggregation::concat);
    /// Throws DimensionError unless every plane has R*R*F' values.
    TriplaneSet(std::size_t resolution, std::size_t channels, std::vector<float> plane_xy,
                std::vector<float> plane_xz, std::vector<float> plane_yz,
                TriplaneAggregation mode = TriplaneAggregation::concat);

    std::size_t resolution() const noexcept { return resolution_; }
    std::size_t channels() const noexcept { return channels_; }
    TriplaneAggregation aggregation() const noexcept { return mode_; }
    void set_aggregation(TriplaneAggregation mode) noexcept { mode_ = mode; }

    /// Channel count of the sampled voxel grid: 3F' for concat, F' otherwise.
    std::size_t output_channels() const noexcept;

    std::span<float> plane(Plane p) noexcept { return planes_[p]; }
    std::span<const float> plane(Plane p) const noexcept { return planes_[p]; }

    std::span<float> texel(Plane p, std::size_t u, std::size_t v) noexcept {
        return {planes_[p].data() + (v * resolution_ + u) * channels_, channels_};
    }
    std::span<const float> texel(Plane p, std::size_t u, std::size_t v) const noexcept {
        return {planes_[p].data() + (v * resolution_ + u) * channels_, channels_};
    }

private:
    std::size_t resolution_ = 0;
    std::size_t channels_ = 0;
    TriplaneAggregation mode_ = TriplaneAggregation::concat;
    std::vector<float> planes_[3];
};

/// Bilinear sample of one plane at normalized (u, v), clamped to the texel
/// centers at the edges. Writes F' values into out.
void sample_plane_bilinear(const TriplaneSet& tp, TriplaneSet::Plane plane, double u, double v,
                           std::span<float> out);

/// Samples every voxel center of an A^3 grid from the three planes and
/// aggregates per the set's mode.
VoxelGrid sample_triplane(const TriplaneSet& tp, std::size_t resolution);

}  // namespace voxmerge
