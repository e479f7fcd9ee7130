#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

using Triangle = std::array<std::uint32_t, 3>;

/// Triangle mesh with per-vertex color. `colors` is either empty or has one
/// entry per vertex with components in [0,1].
struct TexturedMesh {
    std::vector<std::array<float, 3>> positions;
    std::vector<std::array<float, 3>> colors;
    std::vector<Triangle> triangles;

    bool empty() const noexcept { return triangles.empty(); }
    bool has_colors() const noexcept { return !colors.empty(); }

    /// Throws DataError on out-of-range indices, non-finite coordinates or a
    /// color array of the wrong length.
    void validate() const;

    friend bool operator==(const TexturedMesh&, const TexturedMesh&) = default;
};

struct PointCloud {
    std::vector<Vec3> points;
    std::vector<std::array<float, 3>> colors;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

double triangle_area(const TexturedMesh& mesh, const Triangle& tri);

/// Assigns each vertex the trilinear sample of a 3-channel color field,
/// clamped to [0,1].
TexturedMesh color_mesh(TexturedMesh mesh, const VoxelGrid& rgb);

/// n points drawn area-proportionally over the triangles with uniform
/// barycentric placement. Deterministic for a fixed seed. Colors are
/// interpolated when the mesh has them.
PointCloud sample_surface(const TexturedMesh& mesh, std::size_t n, std::uint64_t seed);

/// Vertices of the mesh as a point cloud.
PointCloud vertices_as_cloud(const TexturedMesh& mesh);

}  // namespace voxmerge
