#include "voxmerge/merge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

EmptyFeatureMode empty_feature_mode_from_string(std::string_view name) {
    if (name == "zeros") return EmptyFeatureMode::zeros;
    if (name == "corners") return EmptyFeatureMode::corners;
    if (name == "explicit") return EmptyFeatureMode::explicit_;
    throw DomainError("unknown empty-feature mode '" + std::string(name) +
                      "' (expected zeros, corners or explicit)");
}

std::string_view to_string(EmptyFeatureMode mode) {
    switch (mode) {
        case EmptyFeatureMode::zeros:
            return "zeros";
        case EmptyFeatureMode::corners:
            return "corners";
        case EmptyFeatureMode::explicit_:
            return "explicit";
    }
    return "zeros";
}

MergeMode merge_mode_from_string(std::string_view name) {
    if (name == "average") return MergeMode::average;
    if (name == "copy-paste") return MergeMode::copy_paste;
    throw DomainError("unknown merge mode '" + std::string(name) +
                      "' (expected average or copy-paste)");
}

std::string_view to_string(MergeMode mode) {
    return mode == MergeMode::average ? "average" : "copy-paste";
}

void MergeConfig::validate() const {
    if (!(theta >= 0.0f && theta <= 1.0f)) {
        throw DomainError("blend coefficient theta must lie in [0,1], got " +
                          std::to_string(theta));
    }
}

std::vector<float> resolve_empty_feature(const VoxelGrid& original, const MergeConfig& cfg) {
    const std::size_t f = original.channels();
    switch (cfg.empty_mode) {
        case EmptyFeatureMode::zeros:
            return std::vector<float>(f, 0.0f);
        case EmptyFeatureMode::corners: {
            const std::size_t hi = original.resolution() - 1;
            std::vector<double> acc(f, 0.0);
            for (std::size_t corner = 0; corner < 8; ++corner) {
                const auto v = original.at(corner & 1 ? hi : 0, corner & 2 ? hi : 0,
                                           corner & 4 ? hi : 0);
                for (std::size_t c = 0; c < f; ++c) {
                    acc[c] += v[c];
                }
            }
            std::vector<float> out(f);
            for (std::size_t c = 0; c < f; ++c) {
                out[c] = static_cast<float>(acc[c] / 8.0);
            }
            return out;
        }
        case EmptyFeatureMode::explicit_:
            if (cfg.empty_feature.size() != f) {
                throw DimensionError("empty feature has " +
                                     std::to_string(cfg.empty_feature.size()) +
                                     " channels, grid has " + std::to_string(f));
            }
            for (float v : cfg.empty_feature) {
                if (!std::isfinite(v)) {
                    throw DataError("empty feature contains a non-finite value");
                }
            }
            return cfg.empty_feature;
    }
    return std::vector<float>(f, 0.0f);
}

Mask3D blend_shell(const Mask3D& edited_mask, std::size_t dilation, Connectivity connectivity) {
    return mask_xor(edited_mask, dilate3d(edited_mask, dilation, connectivity));
}

namespace {

void check_inputs(std::size_t a, std::size_t f, const SlabSource& edited, const Mask3D& mi,
                  const Mask3D& me, const MergeConfig& cfg) {
    if (edited.resolution() != a || edited.channels() != f) {
        throw DimensionError("original grid is " + std::to_string(a) + "^3 x " +
                             std::to_string(f) + ", edited grid is " +
                             std::to_string(edited.resolution()) + "^3 x " +
                             std::to_string(edited.channels()));
    }
    if (mi.resolution() != a || me.resolution() != a) {
        throw DimensionError("merge masks must match the grid resolution " + std::to_string(a));
    }
    cfg.validate();
}

// Bounded slab height keeps the streamed working set near one slice.
std::size_t slab_height(std::size_t a, std::size_t f) {
    constexpr std::size_t kTargetBytes = std::size_t{8} << 20;
    const std::size_t slice_bytes = a * a * f * sizeof(float);
    return std::clamp<std::size_t>(kTargetBytes / std::max<std::size_t>(slice_bytes, 1), 1, a);
}

}  // namespace

void merge_in_place(MergeMode mode, VoxelGrid& original, SlabSource& edited,
                    const Mask3D& original_mask, const Mask3D& edited_mask,
                    const MergeConfig& cfg) {
    const std::size_t a = original.resolution();
    const std::size_t f = original.channels();
    check_inputs(a, f, edited, original_mask, edited_mask, cfg);

    const std::vector<float> empty = resolve_empty_feature(original, cfg);
    const Mask3D shell = mode == MergeMode::average
                             ? blend_shell(edited_mask, cfg.dilation, cfg.connectivity)
                             : Mask3D(a);
    const auto mi = original_mask.bits();
    const auto me = edited_mask.bits();
    const auto k = shell.bits();
    const float theta = cfg.theta;
    const float one_minus_theta = 1.0f - theta;

    const std::size_t slice_voxels = a * a;
    const std::size_t height = slab_height(a, f);
    std::vector<float> slab(height * slice_voxels * f);

    for (std::size_t z0 = 0; z0 < a; z0 += height) {
        const std::size_t z1 = std::min(a, z0 + height);
        const std::size_t first = z0 * slice_voxels;
        const std::size_t last = z1 * slice_voxels;

        bool touched = false;
        for (std::size_t i = first; i < last && !touched; ++i) {
            touched = mi[i] || me[i] || k[i];
        }
        if (!touched) {
            continue;
        }
        const std::span<float> slab_view(slab.data(), (z1 - z0) * slice_voxels * f);
        edited.read_slices(z0, z1, slab_view);

        parallel_for(first, last, [&](std::size_t lo, std::size_t hi) {
            std::vector<float> pristine(f);
            for (std::size_t i = lo; i < hi; ++i) {
                if (!(mi[i] || me[i] || k[i])) {
                    continue;
                }
                auto v = original.voxel(i);
                const float* e = slab_view.data() + (i - first) * f;
                if (k[i] && cfg.blend_from_pristine) {
                    std::copy(v.begin(), v.end(), pristine.begin());
                }
                if (mi[i]) {
                    std::copy(empty.begin(), empty.end(), v.begin());
                }
                if (me[i]) {
                    std::copy(e, e + f, v.begin());
                }
                if (k[i]) {
                    const float* src = cfg.blend_from_pristine ? pristine.data() : v.data();
                    for (std::size_t c = 0; c < f; ++c) {
                        v[c] = theta * src[c] + one_minus_theta * e[c];
                    }
                }
            }
        });
    }
}

VoxelGrid copy_paste_merge(const VoxelGrid& original, const VoxelGrid& edited,
                           const Mask3D& original_mask, const Mask3D& edited_mask,
                           const MergeConfig& cfg) {
    VoxelGrid out = original;
    GridSlabSource source(edited);
    merge_in_place(MergeMode::copy_paste, out, source, original_mask, edited_mask, cfg);
    return out;
}

VoxelGrid average_merge(const VoxelGrid& original, const VoxelGrid& edited,
                        const Mask3D& original_mask, const Mask3D& edited_mask,
                        const MergeConfig& cfg) {
    VoxelGrid out = original;
    GridSlabSource source(edited);
    merge_in_place(MergeMode::average, out, source, original_mask, edited_mask, cfg);
    return out;
}

}  // namespace voxmerge
