#pragma once

#include <filesystem>
#include <vector>

#include "voxmerge/multiview.hpp"

namespace voxmerge::io {

/// Reads one 8-bit PNG as a single-view RGB image (C = 3, values c / 255).
/// Alpha is dropped; gray images are expanded.
MultiViewFeature read_image_png(const std::filesystem::path& path);
/// Stacks several same-sized images into one multi-view feature.
MultiViewFeature read_images_png(const std::vector<std::filesystem::path>& paths);
/// Writes view v of a 3-channel feature as 8-bit RGB (values clamped to
/// [0,1] and rounded).
void write_image_png(const MultiViewFeature& images, std::size_t view,
                     const std::filesystem::path& path);

/// Reads an 8-bit grayscale mask; pixels >= 128 are set. Color inputs are
/// converted to gray first.
MaskStack2D read_mask_png(const std::filesystem::path& path);
MaskStack2D read_masks_png(const std::vector<std::filesystem::path>& paths);
/// Writes view v as gray round(m * 255).
void write_mask_png(const MaskStack2D& masks, std::size_t view, const std::filesystem::path& path);

}  // namespace voxmerge::io
