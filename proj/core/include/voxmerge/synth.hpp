#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

enum class PrimitiveKind { sphere, box, cylinder };

PrimitiveKind primitive_kind_from_string(std::string_view name);
std::string_view to_string(PrimitiveKind kind);

/// Analytic solid with an exact signed distance function.
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::sphere;
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 0.5;              ///< sphere, cylinder
    Vec3 half_extents{0.5, 0.5, 0.5};  ///< box
    double half_height = 0.5;         ///< cylinder, along `axis`
    int axis = 1;                     ///< cylinder axis: 0 = x, 1 = y, 2 = z
    std::array<float, 3> rgb{0.5f, 0.5f, 0.5f};
    std::string label;

    double sdf(const Vec3& p) const;

    static Primitive sphere(std::string label, Vec3 center, double radius,
                            std::array<float, 3> rgb);
    static Primitive box(std::string label, Vec3 center, Vec3 half_extents,
                         std::array<float, 3> rgb);
    static Primitive cylinder(std::string label, Vec3 center, double radius, double half_height,
                              int axis, std::array<float, 3> rgb);

    friend bool operator==(const Primitive&, const Primitive&) = default;
};

/// Union of primitives (min over their SDFs).
struct SceneSpec {
    std::vector<Primitive> primitives;

    /// Throws SceneError on an empty scene, non-positive sizes, colors
    /// outside [0,1], a bad cylinder axis or duplicate labels.
    void validate() const;
    double sdf(const Vec3& p) const;
    /// Index of the primitive with the smallest SDF at p (first on ties).
    std::size_t nearest(const Vec3& p) const;
    const Primitive* find(std::string_view label) const;
};

struct RasterizedScene {
    /// Channel 0 = union SDF at voxel centers, 1..3 = color of the nearest
    /// primitive, remaining channels zero.
    VoxelGrid grid;
    /// Per primitive (scene order): voxels where that primitive's SDF <= 0.
    std::vector<std::pair<std::string, Mask3D>> labels;

    const Mask3D& label_mask(std::string_view label) const;
};

/// Throws DimensionError if channels < 4.
RasterizedScene rasterize(const SceneSpec& scene, std::size_t resolution, std::size_t channels);

struct EditPairOptions {
    /// Uniform noise in [-amplitude, amplitude] added to every channel of
    /// the corrupted region of the edited grid.
    double corruption_amplitude = 0.3;
    std::uint64_t corruption_seed = 42;
    /// Constant added to every channel of the edited grid, emulating a
    /// feature-space offset between the two reconstructions.
    float edited_offset = 0.0f;
};

struct EditPair {
    VoxelGrid original;  ///< V_i
    VoxelGrid edited;    ///< V_e, corrupted and offset
    Mask3D original_mask;  ///< M_i, the removed primitive
    Mask3D edited_mask;    ///< M_e, the added primitive
    VoxelGrid truth;     ///< edited scene rasterized without damage
    std::optional<std::string> removed_label;
    std::optional<std::string> added_label;
};

/// Builds an edit pair from two scenes that differ by at most one replaced
/// primitive. When corrupt_label is given, that primitive (present and
/// unchanged in both scenes) is damaged in V_e. Throws SceneError if the
/// scenes differ by more than one primitive, the label is not an untouched
/// primitive, or its region overlaps the edit masks.
EditPair make_edit_pair(const SceneSpec& original, const SceneSpec& edited,
                        const std::optional<std::string>& corrupt_label, std::size_t resolution,
                        std::size_t channels, const EditPairOptions& options = {});

/// Fixture scene used by tests, benchmarks and the CLI demo: a box
/// ("base") with a sphere ("head") resting on it, and a cylinder ("side")
/// off to one side.
SceneSpec demo_original_scene();
/// demo_original_scene() with the sphere replaced by a cylinder.
SceneSpec demo_edited_scene();

}  // namespace voxmerge
