#include "voxmerge/io/triplane_file.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "io/binary.hpp"
#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

constexpr std::size_t kHeaderSize = 20;
constexpr std::uint32_t kVersion = 1;
constexpr char kMagic[4] = {'T', 'P', 'L', 'F'};

}  // namespace

void write_triplane(const TriplaneSet& tp, const std::filesystem::path& path) {
    if (tp.resolution() > UINT32_MAX || tp.channels() > UINT32_MAX) {
        throw DimensionError("triplane does not fit the file header");
    }
    std::array<std::uint8_t, kHeaderSize> raw{};
    std::copy(std::begin(kMagic), std::end(kMagic), raw.begin());
    detail::put_u32(raw.data() + 4, kVersion);
    detail::put_u32(raw.data() + 8, static_cast<std::uint32_t>(tp.resolution()));
    detail::put_u32(raw.data() + 12, static_cast<std::uint32_t>(tp.channels()));
    std::ofstream out = detail::open_for_write(path);
    out.write(reinterpret_cast<const char*>(raw.data()), kHeaderSize);
    std::vector<std::uint8_t> buf;
    for (auto plane : {TriplaneSet::xy, TriplaneSet::xz, TriplaneSet::yz}) {
        const auto values = tp.plane(plane);
        buf.resize(values.size_bytes());
        detail::floats_to_le(values, buf);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

TriplaneSet read_triplane(const std::filesystem::path& path, TriplaneAggregation mode) {
    std::ifstream in = detail::open_for_read(path);
    std::error_code ec;
    const std::uint64_t file_size = std::filesystem::file_size(path, ec);
    if (ec) {
        throw IoError("cannot stat '" + path.string() + "': " + ec.message());
    }
    std::array<std::uint8_t, kHeaderSize> raw{};
    if (file_size < kHeaderSize || !in.read(reinterpret_cast<char*>(raw.data()), kHeaderSize)) {
        throw FormatError("file is shorter than the triplane header", file_size);
    }
    if (!std::equal(std::begin(kMagic), std::end(kMagic), raw.begin(),
                    [](char m, std::uint8_t b) { return static_cast<std::uint8_t>(m) == b; })) {
        throw FormatError("bad magic (expected \"TPLF\")", 0);
    }
    if (detail::get_u32(raw.data() + 4) != kVersion) {
        throw FormatError("unsupported triplane version", 4);
    }
    const std::uint32_t r = detail::get_u32(raw.data() + 8);
    const std::uint32_t f = detail::get_u32(raw.data() + 12);
    if (r == 0) throw FormatError("plane resolution must be >= 1", 8);
    if (f == 0) throw FormatError("channel count must be >= 1", 12);
    if (raw[16] != 0) throw FormatError("only float32 triplanes are supported", 16);
    for (std::size_t i = 17; i < kHeaderSize; ++i) {
        if (raw[i] != 0) throw FormatError("reserved header byte is nonzero", i);
    }
    const std::uint64_t per_plane = detail::checked_mul(detail::checked_mul(r, r, 8), f, 12);
    const std::uint64_t expected = detail::checked_mul(detail::checked_mul(per_plane, 3, 12), 4, 12);
    const std::uint64_t actual = file_size - kHeaderSize;
    if (actual != expected) {
        throw FormatError("payload length mismatch: expected " + std::to_string(expected) +
                              " bytes, found " + std::to_string(actual),
                          kHeaderSize + std::min(actual, expected));
    }
    std::vector<float> planes[3];
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(per_plane) * 4);
    for (auto& plane : planes) {
        if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
            throw FormatError("unexpected end of file", file_size);
        }
        plane.resize(static_cast<std::size_t>(per_plane));
        detail::floats_from_le(buf, plane);
    }
    return TriplaneSet(r, f, std::move(planes[0]), std::move(planes[1]), std::move(planes[2]),
                       mode);
}

}  // namespace voxmerge::io
