#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "voxmerge/mask_ops.hpp"

namespace voxmerge {

/// V views of H x W x C floats, channel-fastest, then x, then y, then view.
class MultiViewFeature {
public:
    MultiViewFeature() = default;
    MultiViewFeature(std::size_t views, std::size_t height, std::size_t width,
                     std::size_t channels, float fill = 0.0f);
    MultiViewFeature(std::size_t views, std::size_t height, std::size_t width,
                     std::size_t channels, std::vector<float> data);

    std::size_t views() const noexcept { return views_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t channels() const noexcept { return channels_; }

    std::span<float> pixel(std::size_t v, std::size_t y, std::size_t x) noexcept {
        return {data_.data() + offset(v, y, x), channels_};
    }
    std::span<const float> pixel(std::size_t v, std::size_t y, std::size_t x) const noexcept {
        return {data_.data() + offset(v, y, x), channels_};
    }
    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    friend bool operator==(const MultiViewFeature&, const MultiViewFeature&) = default;

private:
    std::size_t offset(std::size_t v, std::size_t y, std::size_t x) const noexcept {
        return ((v * height_ + y) * width_ + x) * channels_;
    }

    std::size_t views_ = 0;
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::size_t channels_ = 0;
    std::vector<float> data_;
};

/// V masks of H x W values in [0,1]; 1 marks editable pixels.
class MaskStack2D {
public:
    MaskStack2D() = default;
    MaskStack2D(std::size_t views, std::size_t height, std::size_t width, float fill = 0.0f);
    /// Throws DomainError if a value lies outside [0,1].
    MaskStack2D(std::size_t views, std::size_t height, std::size_t width, std::vector<float> values);

    std::size_t views() const noexcept { return views_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }

    float& at(std::size_t v, std::size_t y, std::size_t x) noexcept {
        return values_[(v * height_ + y) * width_ + x];
    }
    float at(std::size_t v, std::size_t y, std::size_t x) const noexcept {
        return values_[(v * height_ + y) * width_ + x];
    }
    std::span<const float> values() const noexcept { return values_; }

    /// True when every value is exactly 0 or 1.
    bool is_binary() const noexcept;
    /// Values >= threshold become 1, the rest 0.
    MaskStack2D binarized(float threshold = 0.5f) const;
    /// Number of set (== 1) pixels in view v.
    std::size_t popcount(std::size_t v) const noexcept;

    friend bool operator==(const MaskStack2D&, const MaskStack2D&) = default;

private:
    std::size_t views_ = 0;
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<float> values_;
};

enum class DownsampleMode { area_soft, nearest_binary };

DownsampleMode downsample_mode_from_string(std::string_view name);

/// Reduces each view to h x w.
///
/// area_soft averages source blocks. Sizes must divide evenly unless
/// allow_resample is set, in which case each output pixel averages the
/// exact fractional source area it covers. nearest_binary picks the source
/// pixel under each output center and thresholds it at 0.5.
MaskStack2D downsample_mask(const MaskStack2D& mask, std::size_t h, std::size_t w,
                            DownsampleMode mode = DownsampleMode::area_soft,
                            bool allow_resample = false);

/// Per-element mask * edited + (1 - mask) * original, with the mask
/// broadcast over channels.
MultiViewFeature blend_features(const MultiViewFeature& edited, const MultiViewFeature& original,
                                const MaskStack2D& mask);

/// Replaces masked pixels with color.rgb. Masks must be binary; soft masks
/// raise PreconditionError.
MultiViewFeature paint_masks(const MultiViewFeature& images, const MaskStack2D& masks,
                             const ColorSpec& color);

enum class MorphOp { dilate, erode };

/// `iterations` rounds of 8-connected dilation or erosion on every view.
/// A negative count swaps the operation. Input is binarized at 0.5. Pixels
/// outside the image count as unset for dilation and as set for erosion.
MaskStack2D morph2d(const MaskStack2D& mask, int iterations, MorphOp op);

}  // namespace voxmerge
