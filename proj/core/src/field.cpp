#include "voxmerge/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

FieldDecoder::FieldDecoder(std::string name, std::size_t min_channels, std::size_t max_channels,
                           Fn fn)
    : name_(std::move(name)),
      min_channels_(min_channels),
      max_channels_(max_channels),
      fn_(std::move(fn)) {}

FieldDecoder FieldDecoder::channel() {
    return FieldDecoder("channel", 4, std::numeric_limits<std::size_t>::max(),
                        [](std::span<const float> f) {
                            return FieldSample{f[0], {f[1], f[2], f[3]}};
                        });
}

FieldDecoder FieldDecoder::sdf_only() {
    return FieldDecoder("sdf-only", 1, std::numeric_limits<std::size_t>::max(),
                        [](std::span<const float> f) {
                            return FieldSample{f[0], {0.5f, 0.5f, 0.5f}};
                        });
}

FieldDecoder FieldDecoder::by_name(const std::string& name) {
    if (name == "channel") return channel();
    if (name == "sdf-only") return sdf_only();
    throw DomainError("unknown decoder '" + name + "' (expected channel or sdf-only)");
}

DecodedFields decode_fields(const VoxelGrid& grid, const FieldDecoder& decoder) {
    if (!decoder.accepts(grid.channels())) {
        throw DimensionError("decoder '" + decoder.name() + "' does not accept " +
                             std::to_string(grid.channels()) + "-channel features");
    }
    const std::size_t a = grid.resolution();
    DecodedFields out{VoxelGrid(a, 1), VoxelGrid(a, 3)};
    parallel_for(0, grid.voxel_count(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const FieldSample s = decoder(grid.voxel(i));
            if (!std::isfinite(s.sdf) || !std::isfinite(s.rgb[0]) || !std::isfinite(s.rgb[1]) ||
                !std::isfinite(s.rgb[2])) {
                throw DataError("decoder produced a non-finite value at voxel " +
                                std::to_string(i));
            }
            out.sdf.voxel(i)[0] = s.sdf;
            auto rgb = out.rgb.voxel(i);
            for (std::size_t c = 0; c < 3; ++c) {
                rgb[c] = std::clamp(s.rgb[c], 0.0f, 1.0f);
            }
        }
    });
    return out;
}

void sample_trilinear(const VoxelGrid& grid, const Vec3& p, std::span<float> out) {
    const std::size_t a = grid.resolution();
    std::size_t lo[3];
    std::size_t hi[3];
    double frac[3];
    for (int k = 0; k < 3; ++k) {
        const double t = continuous_index(p[k], a);
        lo[k] = static_cast<std::size_t>(std::floor(t));
        hi[k] = std::min(lo[k] + 1, a - 1);
        frac[k] = t - static_cast<double>(lo[k]);
    }
    for (std::size_t c = 0; c < grid.channels(); ++c) {
        double acc = 0.0;
        for (int corner = 0; corner < 8; ++corner) {
            const std::size_t x = corner & 1 ? hi[0] : lo[0];
            const std::size_t y = corner & 2 ? hi[1] : lo[1];
            const std::size_t z = corner & 4 ? hi[2] : lo[2];
            const double w = (corner & 1 ? frac[0] : 1.0 - frac[0]) *
                             (corner & 2 ? frac[1] : 1.0 - frac[1]) *
                             (corner & 4 ? frac[2] : 1.0 - frac[2]);
            if (w != 0.0) {
                acc += w * grid.at(x, y, z)[c];
            }
        }
        out[c] = static_cast<float>(acc);
    }
}

}  // namespace voxmerge
