#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

struct FieldSample {
    float sdf = 0.0f;
    std::array<float, 3> rgb{0.0f, 0.0f, 0.0f};
};

/// Maps a per-voxel feature vector to a signed distance and a color.
///
/// Stands in for the learned SDF/color decoders: anything that honors this
/// contract can be plugged in. Outputs must be finite; colors are clamped
/// to [0,1] by decode_fields.
class FieldDecoder {
public:
    using Fn = std::function<FieldSample(std::span<const float>)>;

    /// Accepts feature vectors with min_channels <= F <= max_channels.
    FieldDecoder(std::string name, std::size_t min_channels, std::size_t max_channels, Fn fn);

    /// sdf = channel 0, rgb = channels 1..3. Accepts any F >= 4.
    static FieldDecoder channel();
    /// sdf = channel 0, neutral gray color. Accepts any F >= 1.
    static FieldDecoder sdf_only();
    /// Looks up a built-in decoder by name ("channel" or "sdf-only").
    static FieldDecoder by_name(const std::string& name);

    const std::string& name() const noexcept { return name_; }
    bool accepts(std::size_t channels) const noexcept {
        return channels >= min_channels_ && channels <= max_channels_;
    }
    FieldSample operator()(std::span<const float> feature) const { return fn_(feature); }

private:
    std::string name_;
    std::size_t min_channels_;
    std::size_t max_channels_;
    Fn fn_;
};

struct DecodedFields {
    VoxelGrid sdf;  ///< F = 1
    VoxelGrid rgb;  ///< F = 3, values in [0,1]
};

/// Applies the decoder to every voxel. Throws DimensionError if the decoder
/// does not accept the grid's channel count and DataError on non-finite
/// decoder output.
DecodedFields decode_fields(const VoxelGrid& grid, const FieldDecoder& decoder);

/// Trilinear sample of every channel at normalized position p, clamped to
/// the outermost voxel centers.
void sample_trilinear(const VoxelGrid& grid, const Vec3& p, std::span<float> out);

}  // namespace voxmerge
