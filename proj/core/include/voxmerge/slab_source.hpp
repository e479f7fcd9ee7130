#pragma once

#include <cstddef>
#include <span>

#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

/// Sequential access to a voxel grid by z-slices, so that a grid need not be
/// resident in memory all at once.
class SlabSource {
public:
    virtual ~SlabSource() = default;

    virtual std::size_t resolution() const = 0;
    virtual std::size_t channels() const = 0;

    /// Copies slices [z_begin, z_end) into out, which must hold
    /// (z_end - z_begin) * A * A * F values in grid layout.
    virtual void read_slices(std::size_t z_begin, std::size_t z_end, std::span<float> out) = 0;
};

/// SlabSource view over a resident grid.
class GridSlabSource final : public SlabSource {
public:
    explicit GridSlabSource(const VoxelGrid& grid) : grid_(grid) {}

    std::size_t resolution() const override { return grid_.resolution(); }
    std::size_t channels() const override { return grid_.channels(); }
    void read_slices(std::size_t z_begin, std::size_t z_end, std::span<float> out) override;

private:
    const VoxelGrid& grid_;
};

}  // namespace voxmerge
