#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>

#include "voxmerge/slab_source.hpp"
#include "voxmerge/voxel_grid.hpp"

namespace voxmerge::io {

enum class VxgDtype : std::uint8_t { float32 = 0, uint8 = 1 };

/// 20-byte little-endian header of the VXG container.
///
///   offset  size  field
///        0     4  magic "VXGF"
///        4     4  version (u32, = 1)
///        8     4  resolution A (u32)
///       12     4  channels F (u32)
///       16     1  dtype (0 = float32, 1 = uint8)
///       17     3  reserved, zero
///
/// The payload follows with A^3 * F values, channel-fastest, then x, y, z.
struct VxgHeader {
    static constexpr std::size_t kSize = 20;
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::array<char, 4> kMagic{'V', 'X', 'G', 'F'};

    std::uint32_t resolution = 0;
    std::uint32_t channels = 0;
    VxgDtype dtype = VxgDtype::float32;

    std::array<std::uint8_t, kSize> encode() const;
    /// Validates magic, version, sizes, dtype and reserved bytes. Throws
    /// FormatError naming the offending byte offset.
    static VxgHeader decode(std::span<const std::uint8_t, kSize> bytes);

    std::size_t value_size() const noexcept { return dtype == VxgDtype::float32 ? 4 : 1; }
    /// A^3 * F * value_size, with overflow checking.
    std::uint64_t payload_bytes() const;
};

void write_grid(const VoxelGrid& grid, const std::filesystem::path& path);
/// Reads float32 or uint8 payloads (the latter widened to float).
VoxelGrid read_grid(const std::filesystem::path& path);

/// Masks use the VXG container with F = 1 and dtype uint8 (0 / 1).
void write_mask(const Mask3D& mask, const std::filesystem::path& path);
/// Any nonzero value is set. Requires F = 1.
Mask3D read_mask(const std::filesystem::path& path);

/// Streams a float32 VXG file by z-slices. The header and total file length
/// are validated on open, before any payload is read.
class VxgReader final : public SlabSource {
public:
    explicit VxgReader(const std::filesystem::path& path);

    const VxgHeader& header() const noexcept { return header_; }
    std::size_t resolution() const override { return header_.resolution; }
    std::size_t channels() const override { return header_.channels; }
    void read_slices(std::size_t z_begin, std::size_t z_end, std::span<float> out) override;

private:
    std::filesystem::path path_;
    std::ifstream in_;
    VxgHeader header_;
};

}  // namespace voxmerge::io
