#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

namespace voxmerge::io::detail {

inline void put_u32(std::uint8_t* dst, std::uint32_t v) {
    dst[0] = static_cast<std::uint8_t>(v);
    dst[1] = static_cast<std::uint8_t>(v >> 8);
    dst[2] = static_cast<std::uint8_t>(v >> 16);
    dst[3] = static_cast<std::uint8_t>(v >> 24);
}

inline std::uint32_t get_u32(const std::uint8_t* src) {
    return static_cast<std::uint32_t>(src[0]) | (static_cast<std::uint32_t>(src[1]) << 8) |
           (static_cast<std::uint32_t>(src[2]) << 16) | (static_cast<std::uint32_t>(src[3]) << 24);
}

/// Little-endian float32 array to bytes (in place when the host is LE).
void floats_to_le(std::span<const float> in, std::span<std::uint8_t> out);
void floats_from_le(std::span<const std::uint8_t> in, std::span<float> out);

std::ifstream open_for_read(const std::filesystem::path& path);
std::ofstream open_for_write(const std::filesystem::path& path);

/// a * b, throwing FormatError at `offset` on 64-bit overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t offset);

}  // namespace voxmerge::io::detail
