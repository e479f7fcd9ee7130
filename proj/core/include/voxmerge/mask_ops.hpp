#pragma once

#include <array>
#include <cstddef>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

/// Structuring element for 3D dilation: face neighbors or the full 3x3x3 cube.
enum class Connectivity { face6 = 6, full26 = 26 };

/// Parses 6 or 26. Throws DomainError otherwise.
Connectivity connectivity_from_int(int n);

/// Reference color for segmentation lifting plus a Euclidean RGB threshold.
struct ColorSpec {
    std::array<float, 3> rgb{0.0f, 1.0f, 0.0f};
    float threshold = 0.3f;

    /// Throws DomainError when a component is outside [0,1] or threshold < 0.
    void validate() const;
};

/// Sets voxel v iff ||colors[v] - spec.rgb||_2 <= spec.threshold.
/// colors must have exactly 3 channels.
Mask3D extract_color_mask(const VoxelGrid& colors, const ColorSpec& spec);

/// `iterations` rounds of binary dilation with the given structuring element.
/// Zero iterations returns the input unchanged.
Mask3D dilate3d(const Mask3D& mask, std::size_t iterations,
                Connectivity connectivity = Connectivity::full26);

Mask3D mask_xor(const Mask3D& a, const Mask3D& b);
Mask3D mask_or(const Mask3D& a, const Mask3D& b);
Mask3D mask_and(const Mask3D& a, const Mask3D& b);

}  // namespace voxmerge
