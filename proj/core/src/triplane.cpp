#include "voxmerge/triplane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

TriplaneAggregation triplane_aggregation_from_string(std::string_view name) {
    if (name == "concat") return TriplaneAggregation::concat;
    if (name == "sum") return TriplaneAggregation::sum;
    if (name == "mean") return TriplaneAggregation::mean;
    throw DomainError("unknown triplane aggregation '" + std::string(name) +
                      "' (expected concat, sum or mean)");
}

std::string_view to_string(TriplaneAggregation mode) {
    switch (mode) {
        case TriplaneAggregation::concat:
            return "concat";
        case TriplaneAggregation::sum:
            return "sum";
        case TriplaneAggregation::mean:
            return "mean";
    }
    return "concat";
}

TriplaneSet::TriplaneSet(std::size_t resolution, std::size_t channels, TriplaneAggregation mode)
    : resolution_(resolution), channels_(channels), mode_(mode) {
    if (resolution == 0 || channels == 0) {
        throw DimensionError("triplane needs resolution >= 1 and channels >= 1");
    }
    for (auto& p : planes_) {
        p.assign(resolution * resolution * channels, 0.0f);
    }
}

TriplaneSet::TriplaneSet(std::size_t resolution, std::size_t channels, std::vector<float> plane_xy,
                         std::vector<float> plane_xz, std::vector<float> plane_yz,
                         TriplaneAggregation mode)
    : resolution_(resolution), channels_(channels), mode_(mode) {
    if (resolution == 0 || channels == 0) {
        throw DimensionError("triplane needs resolution >= 1 and channels >= 1");
    }
    planes_[xy] = std::move(plane_xy);
    planes_[xz] = std::move(plane_xz);
    planes_[yz] = std::move(plane_yz);
    const std::size_t expected = resolution * resolution * channels;
    for (const auto& p : planes_) {
        if (p.size() != expected) {
            throw DimensionError("triplane plane has " + std::to_string(p.size()) +
                                 " values, expected " + std::to_string(expected));
        }
    }
}

std::size_t TriplaneSet::output_channels() const noexcept {
    return mode_ == TriplaneAggregation::concat ? 3 * channels_ : channels_;
}

void sample_plane_bilinear(const TriplaneSet& tp, TriplaneSet::Plane plane, double u, double v,
                           std::span<float> out) {
    const std::size_t r = tp.resolution();
    const double tu = continuous_index(u, r);
    const double tv = continuous_index(v, r);
    const std::size_t u0 = static_cast<std::size_t>(std::floor(tu));
    const std::size_t v0 = static_cast<std::size_t>(std::floor(tv));
    const std::size_t u1 = std::min(u0 + 1, r - 1);
    const std::size_t v1 = std::min(v0 + 1, r - 1);
    const double fu = tu - static_cast<double>(u0);
    const double fv = tv - static_cast<double>(v0);

    const auto t00 = tp.texel(plane, u0, v0);
    const auto t10 = tp.texel(plane, u1, v0);
    const auto t01 = tp.texel(plane, u0, v1);
    const auto t11 = tp.texel(plane, u1, v1);
    for (std::size_t c = 0; c < tp.channels(); ++c) {
        const double bottom = t00[c] + fu * (static_cast<double>(t10[c]) - t00[c]);
        const double top = t01[c] + fu * (static_cast<double>(t11[c]) - t01[c]);
        out[c] = static_cast<float>(bottom + fv * (top - bottom));
    }
}

VoxelGrid sample_triplane(const TriplaneSet& tp, std::size_t resolution) {
    if (resolution == 0) {
        throw DimensionError("triplane sampling needs A >= 1");
    }
    if (tp.resolution() == 0) {
        throw DimensionError("triplane is empty");
    }
    const std::size_t fp = tp.channels();
    VoxelGrid out(resolution, tp.output_channels());

    parallel_for(0, resolution, [&](std::size_t z_lo, std::size_t z_hi) {
        std::vector<float> sxy(fp), sxz(fp), syz(fp);
        for (std::size_t z = z_lo; z < z_hi; ++z) {
            const double pz = voxel_center(z, resolution);
            for (std::size_t y = 0; y < resolution; ++y) {
                const double py = voxel_center(y, resolution);
                for (std::size_t x = 0; x < resolution; ++x) {
                    const double px = voxel_center(x, resolution);
                    sample_plane_bilinear(tp, TriplaneSet::xy, px, py, sxy);
                    sample_plane_bilinear(tp, TriplaneSet::xz, px, pz, sxz);
                    sample_plane_bilinear(tp, TriplaneSet::yz, py, pz, syz);
                    auto dst = out.at(x, y, z);
                    switch (tp.aggregation()) {
                        case TriplaneAggregation::concat:
                            std::copy(sxy.begin(), sxy.end(), dst.begin());
                            std::copy(sxz.begin(), sxz.end(), dst.begin() + fp);
                            std::copy(syz.begin(), syz.end(), dst.begin() + 2 * fp);
                            break;
                        case TriplaneAggregation::sum:
                            for (std::size_t c = 0; c < fp; ++c) {
                                dst[c] = sxy[c] + sxz[c] + syz[c];
                            }
                            break;
                        case TriplaneAggregation::mean:
                            for (std::size_t c = 0; c < fp; ++c) {
                                dst[c] = (sxy[c] + sxz[c] + syz[c]) / 3.0f;
                            }
                            break;
                    }
                }
            }
        }
    });
    return out;
}

}  // namespace voxmerge
