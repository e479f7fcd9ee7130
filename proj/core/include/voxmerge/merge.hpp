#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "voxmerge/mask_ops.hpp"
#include "voxmerge/slab_source.hpp"
#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

/// How nullified voxels of the original grid are filled.
enum class EmptyFeatureMode {
    zeros,     ///< all-zero feature vector
    corners,   ///< mean feature of the original grid's 8 corner voxels
    explicit_  ///< MergeConfig::empty_feature as given
};

EmptyFeatureMode empty_feature_mode_from_string(std::string_view name);
std::string_view to_string(EmptyFeatureMode mode);

enum class MergeMode { average, copy_paste };

MergeMode merge_mode_from_string(std::string_view name);
std::string_view to_string(MergeMode mode);

struct MergeConfig {
    std::size_t dilation = 2;
    float theta = 0.5f;
    Connectivity connectivity = Connectivity::full26;
    EmptyFeatureMode empty_mode = EmptyFeatureMode::zeros;
    /// Only read when empty_mode == explicit_. Length must equal F.
    std::vector<float> empty_feature;
    /// Blend the shell from the untouched original instead of the grid
    /// after nullify/paste.
    bool blend_from_pristine = false;

    /// Throws DomainError if theta is outside [0,1].
    void validate() const;
};

/// The feature vector written into nullified voxels of `original`.
std::vector<float> resolve_empty_feature(const VoxelGrid& original, const MergeConfig& cfg);

/// Transition band around the edited region: dilate(M_e, d) xor M_e.
Mask3D blend_shell(const Mask3D& edited_mask, std::size_t dilation, Connectivity connectivity);

/// Nullify M_i, then paste V_e over M_e. Everything else is copied from V_i
/// bit for bit.
VoxelGrid copy_paste_merge(const VoxelGrid& original, const VoxelGrid& edited,
                           const Mask3D& original_mask, const Mask3D& edited_mask,
                           const MergeConfig& cfg);

/// Copy-paste followed by theta-blending over the dilation shell K:
///
///   V_i[M_i] <- empty
///   V_i[M_e] <- V_e[M_e]
///   K        <- dilate(M_e, d) xor M_e
///   out      <- V_i;  out[K] <- theta * V_i[K] + (1 - theta) * V_e[K]
///
/// The blend reads V_i after the first two steps, so nullified voxels that
/// fall inside K are blended from the empty feature.
VoxelGrid average_merge(const VoxelGrid& original, const VoxelGrid& edited,
                        const Mask3D& original_mask, const Mask3D& edited_mask,
                        const MergeConfig& cfg);

/// In-place variant of either merge. `original` is overwritten with the
/// result; `edited` is streamed one slab at a time and only slabs that
/// contain masked voxels are read. The caller must hold the only reference
/// to `original` for the duration of the call.
void merge_in_place(MergeMode mode, VoxelGrid& original, SlabSource& edited,
                    const Mask3D& original_mask, const Mask3D& edited_mask,
                    const MergeConfig& cfg);

}  // namespace voxmerge
