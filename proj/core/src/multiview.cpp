#include "voxmerge/multiview.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"

namespace voxmerge {

MultiViewFeature::MultiViewFeature(std::size_t views, std::size_t height, std::size_t width,
                                   std::size_t channels, float fill)
    : views_(views), height_(height), width_(width), channels_(channels) {
    if (views == 0 || height == 0 || width == 0 || channels == 0) {
        throw DimensionError("multi-view feature dimensions must all be >= 1");
    }
    data_.assign(views * height * width * channels, fill);
}

MultiViewFeature::MultiViewFeature(std::size_t views, std::size_t height, std::size_t width,
                                   std::size_t channels, std::vector<float> data)
    : views_(views), height_(height), width_(width), channels_(channels), data_(std::move(data)) {
    if (views == 0 || height == 0 || width == 0 || channels == 0) {
        throw DimensionError("multi-view feature dimensions must all be >= 1");
    }
    if (data_.size() != views * height * width * channels) {
        throw DimensionError("multi-view feature payload has " + std::to_string(data_.size()) +
                             " values, expected " +
                             std::to_string(views * height * width * channels));
    }
}

MaskStack2D::MaskStack2D(std::size_t views, std::size_t height, std::size_t width, float fill)
    : views_(views), height_(height), width_(width) {
    if (views == 0 || height == 0 || width == 0) {
        throw DimensionError("mask stack dimensions must all be >= 1");
    }
    if (!(fill >= 0.0f && fill <= 1.0f)) {
        throw DomainError("mask values must lie in [0,1]");
    }
    values_.assign(views * height * width, fill);
}

MaskStack2D::MaskStack2D(std::size_t views, std::size_t height, std::size_t width,
                         std::vector<float> values)
    : views_(views), height_(height), width_(width), values_(std::move(values)) {
    if (views == 0 || height == 0 || width == 0) {
        throw DimensionError("mask stack dimensions must all be >= 1");
    }
    if (values_.size() != views * height * width) {
        throw DimensionError("mask stack payload has " + std::to_string(values_.size()) +
                             " values, expected " + std::to_string(views * height * width));
    }
    for (float v : values_) {
        if (!(v >= 0.0f && v <= 1.0f)) {
            throw DomainError("mask values must lie in [0,1]");
        }
    }
}

bool MaskStack2D::is_binary() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [](float v) { return v == 0.0f || v == 1.0f; });
}

MaskStack2D MaskStack2D::binarized(float threshold) const {
    MaskStack2D out = *this;
    for (auto& v : out.values_) {
        v = v >= threshold ? 1.0f : 0.0f;
    }
    return out;
}

std::size_t MaskStack2D::popcount(std::size_t v) const noexcept {
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(v * height_ * width_);
    return static_cast<std::size_t>(
        std::count(first, first + static_cast<std::ptrdiff_t>(height_ * width_), 1.0f));
}

DownsampleMode downsample_mode_from_string(std::string_view name) {
    if (name == "area_soft" || name == "area-soft") return DownsampleMode::area_soft;
    if (name == "nearest_binary" || name == "nearest-binary") return DownsampleMode::nearest_binary;
    throw DomainError("unknown downsample mode '" + std::string(name) +
                      "' (expected area_soft or nearest_binary)");
}

namespace {

struct Tap {
    std::size_t index;
    double weight;
};

// Exact box-filter weights mapping n_in source pixels onto n_out outputs.
std::vector<std::vector<Tap>> area_taps(std::size_t n_in, std::size_t n_out) {
    std::vector<std::vector<Tap>> taps(n_out);
    const double scale = static_cast<double>(n_in) / static_cast<double>(n_out);
    for (std::size_t o = 0; o < n_out; ++o) {
        const double lo = static_cast<double>(o) * scale;
        const double hi = static_cast<double>(o + 1) * scale;
        for (auto i = static_cast<std::size_t>(std::floor(lo));
             i < n_in && static_cast<double>(i) < hi; ++i) {
            const double overlap =
                std::min(hi, static_cast<double>(i + 1)) - std::max(lo, static_cast<double>(i));
            if (overlap > 0.0) {
                taps[o].push_back({i, overlap / scale});
            }
        }
    }
    return taps;
}

}  // namespace

MaskStack2D downsample_mask(const MaskStack2D& mask, std::size_t h, std::size_t w,
                            DownsampleMode mode, bool allow_resample) {
    if (h == 0 || w == 0 || h > mask.height() || w > mask.width()) {
        throw DimensionError("downsample target " + std::to_string(h) + "x" + std::to_string(w) +
                             " must be non-empty and no larger than " +
                             std::to_string(mask.height()) + "x" + std::to_string(mask.width()));
    }
    MaskStack2D out(mask.views(), h, w);

    if (mode == DownsampleMode::nearest_binary) {
        for (std::size_t v = 0; v < mask.views(); ++v) {
            for (std::size_t y = 0; y < h; ++y) {
                const std::size_t sy = (2 * y + 1) * mask.height() / (2 * h);
                for (std::size_t x = 0; x < w; ++x) {
                    const std::size_t sx = (2 * x + 1) * mask.width() / (2 * w);
                    out.at(v, y, x) = mask.at(v, sy, sx) >= 0.5f ? 1.0f : 0.0f;
                }
            }
        }
        return out;
    }

    const bool divisible = mask.height() % h == 0 && mask.width() % w == 0;
    if (divisible) {
        const std::size_t by = mask.height() / h;
        const std::size_t bx = mask.width() / w;
        const double inv = 1.0 / static_cast<double>(by * bx);
        for (std::size_t v = 0; v < mask.views(); ++v) {
            for (std::size_t y = 0; y < h; ++y) {
                for (std::size_t x = 0; x < w; ++x) {
                    double sum = 0.0;
                    for (std::size_t dy = 0; dy < by; ++dy) {
                        for (std::size_t dx = 0; dx < bx; ++dx) {
                            sum += mask.at(v, y * by + dy, x * bx + dx);
                        }
                    }
                    out.at(v, y, x) = std::clamp(static_cast<float>(sum * inv), 0.0f, 1.0f);
                }
            }
        }
        return out;
    }
    if (!allow_resample) {
        throw DimensionError("area downsampling from " + std::to_string(mask.height()) + "x" +
                             std::to_string(mask.width()) + " to " + std::to_string(h) + "x" +
                             std::to_string(w) + " needs integer factors (enable resampling)");
    }

    const auto ty = area_taps(mask.height(), h);
    const auto tx = area_taps(mask.width(), w);
    for (std::size_t v = 0; v < mask.views(); ++v) {
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                double sum = 0.0;
                for (const Tap& a : ty[y]) {
                    for (const Tap& b : tx[x]) {
                        sum += a.weight * b.weight * mask.at(v, a.index, b.index);
                    }
                }
                out.at(v, y, x) = std::clamp(static_cast<float>(sum), 0.0f, 1.0f);
            }
        }
    }
    return out;
}

MultiViewFeature blend_features(const MultiViewFeature& edited, const MultiViewFeature& original,
                                const MaskStack2D& mask) {
    if (edited.views() != original.views() || edited.height() != original.height() ||
        edited.width() != original.width() || edited.channels() != original.channels()) {
        throw DimensionError("edited and original features differ in shape");
    }
    if (mask.views() != edited.views() || mask.height() != edited.height() ||
        mask.width() != edited.width()) {
        throw DimensionError("mask stack " + std::to_string(mask.views()) + "x" +
                             std::to_string(mask.height()) + "x" + std::to_string(mask.width()) +
                             " does not match features " + std::to_string(edited.views()) + "x" +
                             std::to_string(edited.height()) + "x" +
                             std::to_string(edited.width()));
    }
    MultiViewFeature out = original;
    for (std::size_t v = 0; v < edited.views(); ++v) {
        for (std::size_t y = 0; y < edited.height(); ++y) {
            for (std::size_t x = 0; x < edited.width(); ++x) {
                const float m = mask.at(v, y, x);
                const auto e = edited.pixel(v, y, x);
                auto o = out.pixel(v, y, x);
                if (m >= 1.0f) {
                    std::copy(e.begin(), e.end(), o.begin());
                } else if (m > 0.0f) {
                    for (std::size_t c = 0; c < o.size(); ++c) {
                        const float lo = std::min(e[c], o[c]);
                        const float hi = std::max(e[c], o[c]);
                        // Clamping keeps rounding from leaving the convex hull.
                        o[c] = std::clamp(m * e[c] + (1.0f - m) * o[c], lo, hi);
                    }
                }
            }
        }
    }
    return out;
}

MultiViewFeature paint_masks(const MultiViewFeature& images, const MaskStack2D& masks,
                             const ColorSpec& color) {
    if (images.channels() != 3) {
        throw DimensionError("painting needs 3-channel images, got " +
                             std::to_string(images.channels()));
    }
    if (masks.views() != images.views() || masks.height() != images.height() ||
        masks.width() != images.width()) {
        throw DimensionError("mask stack does not match the image stack");
    }
    if (!masks.is_binary()) {
        throw PreconditionError("painting needs binary masks; binarize at 0.5 first");
    }
    color.validate();
    MultiViewFeature out = images;
    for (std::size_t v = 0; v < images.views(); ++v) {
        for (std::size_t y = 0; y < images.height(); ++y) {
            for (std::size_t x = 0; x < images.width(); ++x) {
                if (masks.at(v, y, x) == 1.0f) {
                    auto p = out.pixel(v, y, x);
                    std::copy(color.rgb.begin(), color.rgb.end(), p.begin());
                }
            }
        }
    }
    return out;
}

MaskStack2D morph2d(const MaskStack2D& mask, int iterations, MorphOp op) {
    if (iterations < 0) {
        op = op == MorphOp::dilate ? MorphOp::erode : MorphOp::dilate;
        iterations = -iterations;
    }
    MaskStack2D cur = mask.binarized();
    if (iterations == 0) {
        return cur;
    }
    const std::size_t h = mask.height();
    const std::size_t w = mask.width();
    const bool dilate = op == MorphOp::dilate;
    const float outside = dilate ? 0.0f : 1.0f;
    MaskStack2D next = cur;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t v = 0; v < mask.views(); ++v) {
            for (std::size_t y = 0; y < h; ++y) {
                for (std::size_t x = 0; x < w; ++x) {
                    bool any = false;
                    bool all = true;
                    for (int dy = -1; dy <= 1; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            const auto ny = static_cast<std::ptrdiff_t>(y) + dy;
                            const auto nx = static_cast<std::ptrdiff_t>(x) + dx;
                            float val = outside;
                            if (ny >= 0 && nx >= 0 && ny < static_cast<std::ptrdiff_t>(h) &&
                                nx < static_cast<std::ptrdiff_t>(w)) {
                                val = cur.at(v, static_cast<std::size_t>(ny),
                                             static_cast<std::size_t>(nx));
                            }
                            any = any || val == 1.0f;
                            all = all && val == 1.0f;
                        }
                    }
                    next.at(v, y, x) = (dilate ? any : all) ? 1.0f : 0.0f;
                }
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

}  // namespace voxmerge
