#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace voxmerge {

/// Integer voxel coordinate.
struct VoxelIndex {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;

    friend bool operator==(const VoxelIndex&, const VoxelIndex&) = default;
};

using Vec3 = std::array<double, 3>;

/// Center of voxel i along one axis of an A-voxel grid spanning [-1, 1]:
/// -1 + (2i + 1) / A.
inline double voxel_center(std::size_t i, std::size_t resolution) {
    return -1.0 + (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(resolution);
}

inline Vec3 voxel_center(const VoxelIndex& v, std::size_t resolution) {
    return {voxel_center(v.x, resolution), voxel_center(v.y, resolution),
            voxel_center(v.z, resolution)};
}

/// Continuous voxel index of normalized coordinate u, clamped to the range
/// of voxel centers [0, A-1]. Inverse of voxel_center.
double continuous_index(double u, std::size_t resolution);

/// Dense cubic grid of F-channel float features.
///
/// Storage is channel-fastest, then x, then y, then z:
/// offset = ((z * A + y) * A + x) * F + c.
class VoxelGrid {
public:
    VoxelGrid() = default;
    /// Zero-filled grid. Throws DimensionError if resolution or channels is 0.
    VoxelGrid(std::size_t resolution, std::size_t channels);
    /// Takes ownership of data; its size must equal resolution^3 * channels.
    VoxelGrid(std::size_t resolution, std::size_t channels, std::vector<float> data);

    std::size_t resolution() const noexcept { return resolution_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t voxel_count() const noexcept { return resolution_ * resolution_ * resolution_; }
    std::size_t payload_bytes() const noexcept { return data_.size() * sizeof(float); }

    std::size_t linear_index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return (z * resolution_ + y) * resolution_ + x;
    }
    VoxelIndex unravel(std::size_t linear) const noexcept {
        return {linear % resolution_, (linear / resolution_) % resolution_,
                linear / (resolution_ * resolution_)};
    }

    std::span<float> voxel(std::size_t linear) noexcept {
        return {data_.data() + linear * channels_, channels_};
    }
    std::span<const float> voxel(std::size_t linear) const noexcept {
        return {data_.data() + linear * channels_, channels_};
    }
    std::span<float> at(std::size_t x, std::size_t y, std::size_t z) noexcept {
        return voxel(linear_index(x, y, z));
    }
    std::span<const float> at(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return voxel(linear_index(x, y, z));
    }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    bool same_shape(const VoxelGrid& other) const noexcept {
        return resolution_ == other.resolution_ && channels_ == other.channels_;
    }

    /// True when every value is finite.
    bool all_finite() const noexcept;

    friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;

private:
    std::size_t resolution_ = 0;
    std::size_t channels_ = 0;
    std::vector<float> data_;
};

/// Boolean A^3 volume with the same spatial layout as VoxelGrid.
class Mask3D {
public:
    Mask3D() = default;
    explicit Mask3D(std::size_t resolution);
    /// One byte per voxel, nonzero = set. Normalized to {0, 1}.
    Mask3D(std::size_t resolution, std::vector<std::uint8_t> bits);

    static Mask3D full(std::size_t resolution);

    std::size_t resolution() const noexcept { return resolution_; }
    std::size_t voxel_count() const noexcept { return bits_.size(); }

    std::size_t linear_index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return (z * resolution_ + y) * resolution_ + x;
    }

    bool test(std::size_t linear) const noexcept { return bits_[linear] != 0; }
    bool test(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return test(linear_index(x, y, z));
    }
    void set(std::size_t linear, bool value = true) noexcept { bits_[linear] = value ? 1 : 0; }
    void set(std::size_t x, std::size_t y, std::size_t z, bool value = true) noexcept {
        set(linear_index(x, y, z), value);
    }

    std::size_t popcount() const noexcept;
    bool empty() const noexcept { return popcount() == 0; }
    /// Every set voxel of *this is also set in other.
    bool subset_of(const Mask3D& other) const;
    bool intersects(const Mask3D& other) const;

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<std::uint8_t> bits() noexcept { return bits_; }

    friend bool operator==(const Mask3D&, const Mask3D&) = default;

private:
    std::size_t resolution_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Throws DimensionError unless the mask and grid share a resolution.
void require_same_resolution(const Mask3D& mask, const VoxelGrid& grid, const char* what);
void require_same_resolution(const Mask3D& a, const Mask3D& b, const char* what);

}  // namespace voxmerge
