#include "voxmerge/io/vxg.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "io/binary.hpp"
#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

constexpr std::size_t kChunkBytes = std::size_t{4} << 20;

// Opens the file, decodes the header and checks that the file holds exactly
// the declared payload. Nothing is allocated from header values before the
// length check passes.
VxgHeader open_and_validate(const std::filesystem::path& path, std::ifstream& in) {
    in = detail::open_for_read(path);
    std::error_code ec;
    const std::uint64_t file_size = std::filesystem::file_size(path, ec);
    if (ec) {
        throw IoError("cannot stat '" + path.string() + "': " + ec.message());
    }
    std::array<std::uint8_t, VxgHeader::kSize> raw{};
    if (file_size < VxgHeader::kSize ||
        !in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
        throw FormatError("file is shorter than the " + std::to_string(VxgHeader::kSize) +
                              "-byte VXG header (" + std::to_string(file_size) + " bytes)",
                          std::min<std::uint64_t>(file_size, VxgHeader::kSize));
    }
    const VxgHeader header = VxgHeader::decode(raw);
    const std::uint64_t expected = header.payload_bytes();
    const std::uint64_t actual = file_size - VxgHeader::kSize;
    if (actual < expected) {
        throw FormatError("truncated payload: expected " + std::to_string(expected) +
                              " bytes, found " + std::to_string(actual),
                          file_size);
    }
    if (actual > expected) {
        throw FormatError("trailing data: expected " + std::to_string(expected) +
                              " payload bytes, found " + std::to_string(actual),
                          VxgHeader::kSize + expected);
    }
    return header;
}

void read_exact(std::ifstream& in, std::uint8_t* dst, std::size_t bytes, std::uint64_t offset) {
    if (!in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(bytes))) {
        throw FormatError("unexpected end of file", offset + static_cast<std::uint64_t>(in.gcount()));
    }
}

void write_header_and_floats(const std::filesystem::path& path, const VxgHeader& header,
                             std::span<const float> values) {
    std::ofstream out = detail::open_for_write(path);
    const auto raw = header.encode();
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    std::vector<std::uint8_t> chunk;
    const std::size_t per_chunk = kChunkBytes / sizeof(float);
    for (std::size_t i = 0; i < values.size(); i += per_chunk) {
        const auto part = values.subspan(i, std::min(per_chunk, values.size() - i));
        chunk.resize(part.size_bytes());
        detail::floats_to_le(part, chunk);
        out.write(reinterpret_cast<const char*>(chunk.data()),
                  static_cast<std::streamsize>(chunk.size()));
    }
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::uint32_t narrow_dim(std::size_t v, const char* what) {
    if (v > UINT32_MAX) {
        throw DimensionError(std::string(what) + " does not fit the VXG header");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::array<std::uint8_t, VxgHeader::kSize> VxgHeader::encode() const {
    std::array<std::uint8_t, kSize> raw{};
    std::copy(kMagic.begin(), kMagic.end(), raw.begin());
    detail::put_u32(raw.data() + 4, kVersion);
    detail::put_u32(raw.data() + 8, resolution);
    detail::put_u32(raw.data() + 12, channels);
    raw[16] = static_cast<std::uint8_t>(dtype);
    return raw;
}

VxgHeader VxgHeader::decode(std::span<const std::uint8_t, kSize> bytes) {
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin(),
                    [](char m, std::uint8_t b) { return static_cast<std::uint8_t>(m) == b; })) {
        throw FormatError("bad magic (expected \"VXGF\")", 0);
    }
    const std::uint32_t version = detail::get_u32(bytes.data() + 4);
    if (version != kVersion) {
        throw FormatError("unsupported VXG version " + std::to_string(version), 4);
    }
    VxgHeader h;
    h.resolution = detail::get_u32(bytes.data() + 8);
    if (h.resolution == 0) {
        throw FormatError("resolution must be >= 1", 8);
    }
    h.channels = detail::get_u32(bytes.data() + 12);
    if (h.channels == 0) {
        throw FormatError("channel count must be >= 1", 12);
    }
    if (bytes[16] > 1) {
        throw FormatError("unknown dtype " + std::to_string(bytes[16]), 16);
    }
    h.dtype = static_cast<VxgDtype>(bytes[16]);
    for (std::size_t i = 17; i < kSize; ++i) {
        if (bytes[i] != 0) {
            throw FormatError("reserved header byte is nonzero", i);
        }
    }
    return h;
}

std::uint64_t VxgHeader::payload_bytes() const {
    std::uint64_t n = detail::checked_mul(resolution, resolution, 8);
    n = detail::checked_mul(n, resolution, 8);
    n = detail::checked_mul(n, channels, 12);
    return detail::checked_mul(n, value_size(), 16);
}

void write_grid(const VoxelGrid& grid, const std::filesystem::path& path) {
    VxgHeader header;
    header.resolution = narrow_dim(grid.resolution(), "resolution");
    header.channels = narrow_dim(grid.channels(), "channel count");
    header.dtype = VxgDtype::float32;
    write_header_and_floats(path, header, grid.data());
}

VoxelGrid read_grid(const std::filesystem::path& path) {
    std::ifstream in;
    const VxgHeader header = open_and_validate(path, in);
    const std::size_t count = static_cast<std::size_t>(header.payload_bytes() / header.value_size());
    std::vector<float> values(count);
    if (header.dtype == VxgDtype::float32) {
        std::vector<std::uint8_t> chunk;
        const std::size_t per_chunk = kChunkBytes / sizeof(float);
        for (std::size_t i = 0; i < count; i += per_chunk) {
            const std::size_t n = std::min(per_chunk, count - i);
            chunk.resize(n * sizeof(float));
            read_exact(in, chunk.data(), chunk.size(), VxgHeader::kSize + i * sizeof(float));
            detail::floats_from_le(chunk, std::span<float>(values.data() + i, n));
        }
    } else {
        std::vector<std::uint8_t> bytes(count);
        read_exact(in, bytes.data(), bytes.size(), VxgHeader::kSize);
        std::transform(bytes.begin(), bytes.end(), values.begin(),
                       [](std::uint8_t b) { return static_cast<float>(b); });
    }
    return VoxelGrid(header.resolution, header.channels, std::move(values));
}

void write_mask(const Mask3D& mask, const std::filesystem::path& path) {
    VxgHeader header;
    header.resolution = narrow_dim(mask.resolution(), "resolution");
    header.channels = 1;
    header.dtype = VxgDtype::uint8;
    std::ofstream out = detail::open_for_write(path);
    const auto raw = header.encode();
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    const auto bits = mask.bits();
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

Mask3D read_mask(const std::filesystem::path& path) {
    std::ifstream in;
    const VxgHeader header = open_and_validate(path, in);
    if (header.channels != 1) {
        throw FormatError("mask files must have exactly one channel, found " +
                              std::to_string(header.channels),
                          12);
    }
    const std::size_t voxels = static_cast<std::size_t>(header.resolution) * header.resolution *
                               header.resolution;
    std::vector<std::uint8_t> bits(voxels);
    if (header.dtype == VxgDtype::uint8) {
        read_exact(in, bits.data(), bits.size(), VxgHeader::kSize);
    } else {
        std::vector<std::uint8_t> chunk;
        std::vector<float> values;
        const std::size_t per_chunk = kChunkBytes / sizeof(float);
        for (std::size_t i = 0; i < voxels; i += per_chunk) {
            const std::size_t n = std::min(per_chunk, voxels - i);
            chunk.resize(n * sizeof(float));
            values.resize(n);
            read_exact(in, chunk.data(), chunk.size(), VxgHeader::kSize + i * sizeof(float));
            detail::floats_from_le(chunk, values);
            for (std::size_t k = 0; k < n; ++k) {
                bits[i + k] = values[k] != 0.0f ? 1 : 0;
            }
        }
    }
    return Mask3D(header.resolution, std::move(bits));
}

VxgReader::VxgReader(const std::filesystem::path& path) : path_(path) {
    header_ = open_and_validate(path, in_);
    if (header_.dtype != VxgDtype::float32) {
        throw FormatError("streaming reads need a float32 payload", 16);
    }
}

void VxgReader::read_slices(std::size_t z_begin, std::size_t z_end, std::span<float> out) {
    const std::size_t a = header_.resolution;
    const std::size_t slice = a * a * header_.channels;
    if (z_end < z_begin || z_end > a || out.size() != (z_end - z_begin) * slice) {
        throw DimensionError("slab request out of range");
    }
    const std::uint64_t offset = VxgHeader::kSize + std::uint64_t{z_begin} * slice * sizeof(float);
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(offset));
    std::vector<std::uint8_t> chunk;
    const std::size_t per_chunk = kChunkBytes / sizeof(float);
    for (std::size_t i = 0; i < out.size(); i += per_chunk) {
        const std::size_t n = std::min(per_chunk, out.size() - i);
        chunk.resize(n * sizeof(float));
        read_exact(in_, chunk.data(), chunk.size(), offset + i * sizeof(float));
        detail::floats_from_le(chunk, out.subspan(i, n));
    }
}

}  // namespace voxmerge::io
