#include "voxmerge/io/png.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

// Upper bound on decoded pixels, so a hostile header cannot request an
// arbitrarily large buffer.
constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 28;

struct Decoded {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;
};

Decoded decode(const std::filesystem::path& path, png_uint_32 format, std::size_t channels) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        const std::string message = image.message;
        png_image_free(&image);
        if (!std::filesystem::exists(path)) {
            throw IoError("cannot open '" + path.string() + "' for reading");
        }
        throw FormatError("cannot decode PNG '" + path.string() + "': " + message, 0);
    }
    if (std::uint64_t{image.width} * image.height > kMaxPixels) {
        png_image_free(&image);
        throw FormatError("PNG '" + path.string() + "' is too large", 16);
    }
    image.format = format;
    Decoded out;
    out.width = image.width;
    out.height = image.height;
    out.pixels.resize(out.width * out.height * channels);
    if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw FormatError("cannot decode PNG '" + path.string() + "': " + message, 0);
    }
    return out;
}

void encode(const std::filesystem::path& path, png_uint_32 format, std::size_t width,
            std::size_t height, const std::vector<std::uint8_t>& pixels) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.format = format;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw IoError("cannot write PNG '" + path.string() + "': " + message);
    }
}

std::uint8_t to_byte(float v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

void require_same_size(const Decoded& d, std::size_t h, std::size_t w,
                       const std::filesystem::path& path) {
    if (d.height != h || d.width != w) {
        throw DimensionError("'" + path.string() + "' is " + std::to_string(d.width) + "x" +
                             std::to_string(d.height) + ", expected " + std::to_string(w) + "x" +
                             std::to_string(h));
    }
}

}  // namespace

MultiViewFeature read_images_png(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) {
        throw PreconditionError("no images given");
    }
    std::vector<float> data;
    std::size_t h = 0, w = 0;
    for (std::size_t v = 0; v < paths.size(); ++v) {
        const Decoded d = decode(paths[v], PNG_FORMAT_RGB, 3);
        if (v == 0) {
            h = d.height;
            w = d.width;
            data.reserve(paths.size() * h * w * 3);
        }
        require_same_size(d, h, w, paths[v]);
        for (std::uint8_t b : d.pixels) {
            data.push_back(static_cast<float>(b) / 255.0f);
        }
    }
    return MultiViewFeature(paths.size(), h, w, 3, std::move(data));
}

MultiViewFeature read_image_png(const std::filesystem::path& path) {
    return read_images_png({path});
}

void write_image_png(const MultiViewFeature& images, std::size_t view,
                     const std::filesystem::path& path) {
    if (images.channels() != 3) {
        throw DimensionError("PNG output needs 3 channels, got " +
                             std::to_string(images.channels()));
    }
    if (view >= images.views()) {
        throw DimensionError("view index out of range");
    }
    const std::size_t h = images.height(), w = images.width();
    std::vector<std::uint8_t> pixels(h * w * 3);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const auto px = images.pixel(view, y, x);
            for (std::size_t c = 0; c < 3; ++c) {
                pixels[(y * w + x) * 3 + c] = to_byte(px[c]);
            }
        }
    }
    encode(path, PNG_FORMAT_RGB, w, h, pixels);
}

MaskStack2D read_masks_png(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) {
        throw PreconditionError("no masks given");
    }
    std::vector<float> values;
    std::size_t h = 0, w = 0;
    for (std::size_t v = 0; v < paths.size(); ++v) {
        const Decoded d = decode(paths[v], PNG_FORMAT_GRAY, 1);
        if (v == 0) {
            h = d.height;
            w = d.width;
            values.reserve(paths.size() * h * w);
        }
        require_same_size(d, h, w, paths[v]);
        for (std::uint8_t b : d.pixels) {
            values.push_back(b >= 128 ? 1.0f : 0.0f);
        }
    }
    return MaskStack2D(paths.size(), h, w, std::move(values));
}

MaskStack2D read_mask_png(const std::filesystem::path& path) { return read_masks_png({path}); }

void write_mask_png(const MaskStack2D& masks, std::size_t view, const std::filesystem::path& path) {
    if (view >= masks.views()) {
        throw DimensionError("view index out of range");
    }
    const std::size_t h = masks.height(), w = masks.width();
    std::vector<std::uint8_t> pixels(h * w);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            pixels[y * w + x] = to_byte(masks.at(view, y, x));
        }
    }
    encode(path, PNG_FORMAT_GRAY, w, h, pixels);
}

}  // namespace voxmerge::io
