#include "voxmerge/mask_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

Connectivity connectivity_from_int(int n) {
    switch (n) {
        case 6:
            return Connectivity::face6;
        case 26:
            return Connectivity::full26;
        default:
            throw DomainError("connectivity must be 6 or 26, got " + std::to_string(n));
    }
}

void ColorSpec::validate() const {
    for (float c : rgb) {
        if (!(c >= 0.0f && c <= 1.0f)) {
            throw DomainError("reference color components must lie in [0,1]");
        }
    }
    if (!(threshold >= 0.0f) || !std::isfinite(threshold)) {
        throw DomainError("color threshold must be finite and >= 0");
    }
}

Mask3D extract_color_mask(const VoxelGrid& colors, const ColorSpec& spec) {
    if (colors.channels() != 3) {
        throw DimensionError("color mask extraction needs a 3-channel grid, got " +
                             std::to_string(colors.channels()));
    }
    spec.validate();

    const std::size_t a = colors.resolution();
    Mask3D out(a);
    const double tau2 = static_cast<double>(spec.threshold) * spec.threshold;
    auto bits = out.bits();
    parallel_for(0, colors.voxel_count(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto c = colors.voxel(i);
            double d2 = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const double diff = static_cast<double>(c[k]) - spec.rgb[k];
                d2 += diff * diff;
            }
            bits[i] = d2 <= tau2 ? 1 : 0;
        }
    });
    return out;
}

namespace {

// Chebyshev dilation of radius r along one axis, via a running prefix count
// on every line parallel to that axis.
void dilate_axis(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, std::size_t a,
                 std::size_t stride, std::size_t radius) {
    const std::size_t lines = a * a;
    parallel_for(0, lines, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> prefix(a + 1);
        for (std::size_t line = lo; line < hi; ++line) {
            // A line is identified by the two coordinates orthogonal to the axis.
            const std::size_t u = line % a;
            const std::size_t v = line / a;
            std::size_t base = 0;
            if (stride == 1) {
                base = (v * a + u) * a;
            } else if (stride == a) {
                base = v * a * a + u;
            } else {
                base = v * a + u;
            }
            prefix[0] = 0;
            for (std::size_t i = 0; i < a; ++i) {
                prefix[i + 1] = prefix[i] + in[base + i * stride];
            }
            for (std::size_t i = 0; i < a; ++i) {
                const std::size_t first = i >= radius ? i - radius : 0;
                const std::size_t last = std::min(a - 1, i + radius);
                out[base + i * stride] = prefix[last + 1] - prefix[first] > 0 ? 1 : 0;
            }
        }
    });
}

Mask3D dilate_full26(const Mask3D& mask, std::size_t radius) {
    const std::size_t a = mask.resolution();
    Mask3D tmp(a);
    Mask3D out(a);
    dilate_axis(mask.bits(), out.bits(), a, 1, radius);
    dilate_axis(out.bits(), tmp.bits(), a, a, radius);
    dilate_axis(tmp.bits(), out.bits(), a, a * a, radius);
    return out;
}

Mask3D dilate_face6(const Mask3D& mask, std::size_t iterations) {
    const std::size_t a = mask.resolution();
    Mask3D cur = mask;
    Mask3D next(a);
    for (std::size_t it = 0; it < iterations; ++it) {
        const auto in = std::as_const(cur).bits();
        auto out = next.bits();
        parallel_for(0, a, [&](std::size_t z_lo, std::size_t z_hi) {
            for (std::size_t z = z_lo; z < z_hi; ++z) {
                for (std::size_t y = 0; y < a; ++y) {
                    for (std::size_t x = 0; x < a; ++x) {
                        const std::size_t i = (z * a + y) * a + x;
                        std::uint8_t v = in[i];
                        if (!v) {
                            v = (x > 0 && in[i - 1]) || (x + 1 < a && in[i + 1]) ||
                                (y > 0 && in[i - a]) || (y + 1 < a && in[i + a]) ||
                                (z > 0 && in[i - a * a]) || (z + 1 < a && in[i + a * a]);
                        }
                        out[i] = v;
                    }
                }
            }
        });
        std::swap(cur, next);
    }
    return cur;
}

template <typename Op>
Mask3D combine(const Mask3D& a, const Mask3D& b, const char* what, Op op) {
    require_same_resolution(a, b, what);
    Mask3D out(a.resolution());
    const auto x = a.bits();
    const auto y = b.bits();
    auto o = out.bits();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = op(x[i], y[i]) ? 1 : 0;
    }
    return out;
}

}  // namespace

Mask3D dilate3d(const Mask3D& mask, std::size_t iterations, Connectivity connectivity) {
    if (iterations == 0) {
        return mask;
    }
    // Repeated 3x3x3 dilation is a single Chebyshev ball of radius d, which
    // factors into three 1D passes.
    if (connectivity == Connectivity::full26) {
        return dilate_full26(mask, iterations);
    }
    return dilate_face6(mask, iterations);
}

Mask3D mask_xor(const Mask3D& a, const Mask3D& b) {
    return combine(a, b, "mask xor", [](std::uint8_t x, std::uint8_t y) { return x != y; });
}

Mask3D mask_or(const Mask3D& a, const Mask3D& b) {
    return combine(a, b, "mask or", [](std::uint8_t x, std::uint8_t y) { return x || y; });
}

Mask3D mask_and(const Mask3D& a, const Mask3D& b) {
    return combine(a, b, "mask and", [](std::uint8_t x, std::uint8_t y) { return x && y; });
}

}  // namespace voxmerge
