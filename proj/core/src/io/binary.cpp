#include "io/binary.hpp"

#include <limits>

#include "voxmerge/error.hpp"

namespace voxmerge::io::detail {

void floats_to_le(std::span<const float> in, std::span<std::uint8_t> out) {
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(out.data(), in.data(), in.size_bytes());
    } else {
        for (std::size_t i = 0; i < in.size(); ++i) {
            put_u32(out.data() + 4 * i, std::bit_cast<std::uint32_t>(in[i]));
        }
    }
}

void floats_from_le(std::span<const std::uint8_t> in, std::span<float> out) {
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(out.data(), in.data(), out.size_bytes());
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = std::bit_cast<float>(get_u32(in.data() + 4 * i));
        }
    }
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t offset) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw FormatError("declared payload size overflows", offset);
    }
    return a * b;
}

}  // namespace voxmerge::io::detail
