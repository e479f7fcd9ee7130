#include "voxmerge/voxel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"
#include "voxmerge/slab_source.hpp"

namespace voxmerge {

double continuous_index(double u, std::size_t resolution) {
    const double a = static_cast<double>(resolution);
    const double t = ((u + 1.0) * a - 1.0) * 0.5;
    return std::clamp(t, 0.0, a - 1.0);
}

VoxelGrid::VoxelGrid(std::size_t resolution, std::size_t channels)
    : resolution_(resolution), channels_(channels) {
    if (resolution == 0 || channels == 0) {
        throw DimensionError("voxel grid needs resolution >= 1 and channels >= 1");
    }
    data_.assign(resolution * resolution * resolution * channels, 0.0f);
}

VoxelGrid::VoxelGrid(std::size_t resolution, std::size_t channels, std::vector<float> data)
    : resolution_(resolution), channels_(channels), data_(std::move(data)) {
    if (resolution == 0 || channels == 0) {
        throw DimensionError("voxel grid needs resolution >= 1 and channels >= 1");
    }
    const std::size_t expected = resolution * resolution * resolution * channels;
    if (data_.size() != expected) {
        throw DimensionError("voxel grid payload has " + std::to_string(data_.size()) +
                             " values, expected " + std::to_string(expected));
    }
}

bool VoxelGrid::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

Mask3D::Mask3D(std::size_t resolution)
    : resolution_(resolution), bits_(resolution * resolution * resolution, 0) {
    if (resolution == 0) {
        throw DimensionError("mask needs resolution >= 1");
    }
}

Mask3D::Mask3D(std::size_t resolution, std::vector<std::uint8_t> bits)
    : resolution_(resolution), bits_(std::move(bits)) {
    if (resolution == 0) {
        throw DimensionError("mask needs resolution >= 1");
    }
    if (bits_.size() != resolution * resolution * resolution) {
        throw DimensionError("mask payload has " + std::to_string(bits_.size()) +
                             " voxels, expected " +
                             std::to_string(resolution * resolution * resolution));
    }
    for (auto& b : bits_) {
        b = b != 0 ? 1 : 0;
    }
}

Mask3D Mask3D::full(std::size_t resolution) {
    Mask3D m(resolution);
    std::fill(m.bits_.begin(), m.bits_.end(), std::uint8_t{1});
    return m;
}

std::size_t Mask3D::popcount() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool Mask3D::subset_of(const Mask3D& other) const {
    require_same_resolution(*this, other, "subset test");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && !other.bits_[i]) {
            return false;
        }
    }
    return true;
}

bool Mask3D::intersects(const Mask3D& other) const {
    require_same_resolution(*this, other, "intersection test");
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && other.bits_[i]) {
            return true;
        }
    }
    return false;
}

void require_same_resolution(const Mask3D& mask, const VoxelGrid& grid, const char* what) {
    if (mask.resolution() != grid.resolution()) {
        throw DimensionError(std::string(what) + ": mask resolution " +
                             std::to_string(mask.resolution()) + " != grid resolution " +
                             std::to_string(grid.resolution()));
    }
}

void require_same_resolution(const Mask3D& a, const Mask3D& b, const char* what) {
    if (a.resolution() != b.resolution()) {
        throw DimensionError(std::string(what) + ": mask resolutions differ (" +
                             std::to_string(a.resolution()) + " vs " +
                             std::to_string(b.resolution()) + ")");
    }
}

void GridSlabSource::read_slices(std::size_t z_begin, std::size_t z_end, std::span<float> out) {
    const std::size_t slice = grid_.resolution() * grid_.resolution() * grid_.channels();
    if (z_end < z_begin || z_end > grid_.resolution() || out.size() != (z_end - z_begin) * slice) {
        throw DimensionError("slab request out of range");
    }
    const auto src = grid_.data().subspan(z_begin * slice, (z_end - z_begin) * slice);
    std::copy(src.begin(), src.end(), out.begin());
}

}  // namespace voxmerge
