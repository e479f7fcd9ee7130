#include <gtest/gtest.h>

#include <cstring>
#include <numeric>

#include "voxmerge/error.hpp"
#include "voxmerge/multiview.hpp"
#include "voxmerge/prompt_diff.hpp"
#include "voxmerge/random.hpp"

using namespace voxmerge;

namespace {

MultiViewFeature random_feature(Rng& rng, std::size_t v, std::size_t h, std::size_t w,
                                std::size_t c) {
    MultiViewFeature f(v, h, w, c);
    for (float& x : f.data()) x = static_cast<float>(rng.uniform(-2, 2));
    return f;
}

MaskStack2D random_mask(Rng& rng, std::size_t v, std::size_t h, std::size_t w, bool binary) {
    MaskStack2D m(v, h, w);
    for (std::size_t k = 0; k < v; ++k)
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) {
                const double u = rng.uniform();
                m.at(k, y, x) = binary ? (u < 0.4 ? 1.0f : 0.0f) : static_cast<float>(u);
            }
    return m;
}

}  // namespace

TEST(Downsample, BlockAverages) {
    MaskStack2D m(1, 4, 4);
    m.at(0, 2, 0) = m.at(0, 2, 1) = m.at(0, 3, 0) = m.at(0, 3, 1) = 1.0f;
    const MaskStack2D d = downsample_mask(m, 2, 2);
    EXPECT_EQ(std::vector<float>(d.values().begin(), d.values().end()), (std::vector<float>{0, 0, 1, 0}));

    MaskStack2D checker(1, 4, 4);
    for (std::size_t y = 0; y < 4; ++y)
        for (std::size_t x = 0; x < 4; ++x) checker.at(0, y, x) = float((x + y) % 2);
    const auto halved = downsample_mask(checker, 2, 2);
    for (float v : halved.values()) EXPECT_EQ(v, 0.5f);
}

TEST(Downsample, ConstantStaysConstantAndMeanIsPreserved) {
    MaskStack2D c(2, 12, 12, 0.25f);
    for (auto [h, w] : {std::pair{6, 4}, {3, 3}, {1, 12}, {12, 12}}) {
        const auto down = downsample_mask(c, h, w);
        for (float v : down.values()) EXPECT_EQ(v, 0.25f);
    }
    Rng rng(2);
    const MaskStack2D m = random_mask(rng, 1, 8, 8, true);
    const MaskStack2D d = downsample_mask(m, 4, 2);
    const double mean_in = std::accumulate(m.values().begin(), m.values().end(), 0.0) / 64.0;
    const double mean_out = std::accumulate(d.values().begin(), d.values().end(), 0.0) / 8.0;
    EXPECT_DOUBLE_EQ(mean_in, mean_out);
}

TEST(Downsample, NonDivisibleNeedsResample) {
    MaskStack2D m(1, 5, 5, 1.0f);
    EXPECT_THROW(downsample_mask(m, 2, 2), DimensionError);
    EXPECT_THROW(downsample_mask(m, 6, 5), DimensionError);
    const auto resampled = downsample_mask(m, 2, 3, DownsampleMode::area_soft, true);
    for (float v : resampled.values()) {
        EXPECT_FLOAT_EQ(v, 1.0f);
    }
    // 3 -> 2: the middle source pixel is split between both outputs.
    MaskStack2D row(1, 1, 3);
    row.at(0, 0, 1) = 1.0f;
    const MaskStack2D r = downsample_mask(row, 1, 2, DownsampleMode::area_soft, true);
    EXPECT_FLOAT_EQ(r.at(0, 0, 0), 1.0f / 3.0f);
    EXPECT_FLOAT_EQ(r.at(0, 0, 1), 1.0f / 3.0f);
}

TEST(Downsample, NearestBinaryKeepsBinaryValues) {
    Rng rng(3);
    const MaskStack2D m = random_mask(rng, 2, 9, 9, false);
    const MaskStack2D d = downsample_mask(m, 3, 3, DownsampleMode::nearest_binary);
    EXPECT_TRUE(d.is_binary());
    for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t x = 0; x < 3; ++x)
            EXPECT_EQ(d.at(1, y, x), m.at(1, 3 * y + 1, 3 * x + 1) >= 0.5f ? 1.0f : 0.0f);
}

TEST(Blend, ClosedForms) {
    MultiViewFeature e(2, 3, 3, 4, 2.0f), o(2, 3, 3, 4, 0.0f);
    EXPECT_EQ(blend_features(e, o, MaskStack2D(2, 3, 3, 1.0f)), e);
    EXPECT_EQ(blend_features(e, o, MaskStack2D(2, 3, 3, 0.0f)), o);
    const auto blended = blend_features(e, o, MaskStack2D(2, 3, 3, 0.5f));
    for (float v : blended.data()) EXPECT_EQ(v, 1.0f);
    EXPECT_THROW(blend_features(e, MultiViewFeature(2, 3, 3, 3), MaskStack2D(2, 3, 3)),
                 DimensionError);
    EXPECT_THROW(blend_features(e, o, MaskStack2D(1, 3, 3)), DimensionError);
}

TEST(Blend, IdempotentForBinaryMasksAndConvex) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const MultiViewFeature e = random_feature(rng, 4, 5, 6, 3);
        const MultiViewFeature o = random_feature(rng, 4, 5, 6, 3);
        const MaskStack2D bin = random_mask(rng, 4, 5, 6, true);
        const MultiViewFeature once = blend_features(e, o, bin);
        EXPECT_EQ(blend_features(e, once, bin), once);
        const MaskStack2D soft = random_mask(rng, 4, 5, 6, false);
        const MultiViewFeature b = blend_features(e, o, soft);
        for (std::size_t i = 0; i < b.data().size(); ++i) {
            EXPECT_GE(b.data()[i], std::min(e.data()[i], o.data()[i]));
            EXPECT_LE(b.data()[i], std::max(e.data()[i], o.data()[i]));
        }
    }
}

TEST(Paint, TouchesExactlyTheMaskedPixels) {
    Rng rng(5);
    const MultiViewFeature img = random_feature(rng, 3, 8, 8, 3);
    EXPECT_EQ(paint_masks(img, MaskStack2D(3, 8, 8), {}), img);
    const MultiViewFeature full = paint_masks(img, MaskStack2D(3, 8, 8, 1.0f), {});
    for (std::size_t i = 0; i < full.data().size(); ++i) {
        EXPECT_EQ(full.data()[i], i % 3 == 1 ? 1.0f : 0.0f);
    }
    MaskStack2D half(3, 8, 8);
    for (std::size_t v = 0; v < 3; ++v)
        for (std::size_t y = 0; y < 8; ++y)
            for (std::size_t x = 0; x < 4; ++x) half.at(v, y, x) = 1.0f;
    const MultiViewFeature p = paint_masks(img, half, {});
    for (std::size_t v = 0; v < 3; ++v) {
        std::size_t changed = 0;
        for (std::size_t y = 0; y < 8; ++y)
            for (std::size_t x = 0; x < 8; ++x) {
                const auto a = img.pixel(v, y, x), b = p.pixel(v, y, x);
                if (x < 4) {
                    EXPECT_EQ(b[0], 0.0f);
                    EXPECT_EQ(b[1], 1.0f);
                    EXPECT_EQ(b[2], 0.0f);
                    ++changed;
                } else {
                    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size_bytes()), 0);
                }
            }
        EXPECT_EQ(changed, half.popcount(v));
    }
    EXPECT_THROW(paint_masks(img, MaskStack2D(3, 8, 8, 0.5f), {}), PreconditionError);
    EXPECT_THROW(paint_masks(random_feature(rng, 3, 8, 8, 4), half, {}), DimensionError);
}

TEST(Morph2d, BasicShapes) {
    MaskStack2D m(1, 7, 7);
    m.at(0, 3, 3) = 1.0f;
    EXPECT_EQ(morph2d(m, 0, MorphOp::dilate), m);
    const MaskStack2D d = morph2d(m, 1, MorphOp::dilate);
    EXPECT_EQ(d.popcount(0), 9u);
    for (std::size_t y = 2; y <= 4; ++y)
        for (std::size_t x = 2; x <= 4; ++x) EXPECT_EQ(d.at(0, y, x), 1.0f);
    EXPECT_EQ(morph2d(d, 1, MorphOp::erode), m);
    EXPECT_EQ(morph2d(d, -1, MorphOp::dilate), m);
    EXPECT_EQ(morph2d(m, 2, MorphOp::dilate).popcount(0), 25u);
}

TEST(Morph2d, ClosingContainsConvexMasks) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        MaskStack2D m(1, 16, 16);
        const std::size_t x0 = rng.below(10), y0 = rng.below(10);
        const std::size_t w = 1 + rng.below(6), h = 1 + rng.below(6);
        for (std::size_t y = y0; y < y0 + h; ++y)
            for (std::size_t x = x0; x < x0 + w; ++x) m.at(0, y, x) = 1.0f;
        const MaskStack2D closed = morph2d(morph2d(m, 1, MorphOp::dilate), 1, MorphOp::erode);
        for (std::size_t i = 0; i < m.values().size(); ++i) {
            if (m.values()[i] == 1.0f) {
                EXPECT_EQ(closed.values()[i], 1.0f);
            }
        }
    }
}

TEST(PromptDiff, WorkedExamples) {
    const PromptDiff a = prompt_diff("a chicken riding a bike", "a cat riding a bike");
    ASSERT_EQ(a.status, PromptDiff::Status::edit);
    ASSERT_EQ(a.changes.size(), 1u);
    EXPECT_EQ(join_tokens(a.changes[0].removed), "chicken");
    EXPECT_EQ(join_tokens(a.changes[0].added), "cat");
    EXPECT_EQ(join_tokens(a.generic()), "a object riding a bike");

    const PromptDiff b =
        prompt_diff("a skull warrior with a sword", "a skull warrior with a viking axe");
    ASSERT_EQ(b.changes.size(), 1u);
    EXPECT_EQ(join_tokens(b.changes[0].removed), "sword");
    EXPECT_EQ(join_tokens(b.changes[0].added), "viking axe");
}

TEST(PromptDiff, NoEditCaseFoldingAndMultipleSpans) {
    const PromptDiff same = prompt_diff("A Red  Car", "a red car");
    EXPECT_EQ(same.status, PromptDiff::Status::no_edit);
    EXPECT_TRUE(same.changes.empty());
    EXPECT_EQ(join_tokens(same.generic()), "a red car");

    const PromptDiff two = prompt_diff("a red car on a road", "a blue car on a bridge");
    ASSERT_EQ(two.changes.size(), 2u);
    EXPECT_EQ(join_tokens(two.changes[0].removed), "red");
    EXPECT_EQ(join_tokens(two.changes[1].added), "bridge");
    EXPECT_EQ(join_tokens(two.generic(two.changes[1])), "a red car on a object");

    const PromptDiff insert = prompt_diff("a car", "a fast car");
    ASSERT_EQ(insert.changes.size(), 1u);
    EXPECT_TRUE(insert.changes[0].removed.empty());
    EXPECT_EQ(join_tokens(insert.generic()), "a car");

    EXPECT_THROW(prompt_diff("", "a car"), PreconditionError);
    EXPECT_THROW(prompt_diff("a car", "   "), PreconditionError);
}

TEST(PromptDiff, SpansReconstructBothPrompts) {
    Rng rng(7);
    const char* vocab[] = {"a", "the", "cat", "dog", "on", "red", "hat"};
    for (int trial = 0; trial < 200; ++trial) {
        Tokens x, y;
        for (std::size_t i = 0, n = 1 + rng.below(7); i < n; ++i) x.push_back(vocab[rng.below(7)]);
        for (std::size_t i = 0, n = 1 + rng.below(7); i < n; ++i) y.push_back(vocab[rng.below(7)]);
        const PromptDiff d = prompt_diff(join_tokens(x), join_tokens(y));
        // Dropping the removed spans from x and the added spans from y
        // leaves the same common subsequence.
        Tokens cx, cy;
        std::vector<bool> drop_x(x.size()), drop_y(y.size());
        for (const auto& c : d.changes) {
            for (std::size_t i = 0; i < c.removed.size(); ++i) {
                EXPECT_EQ(x[c.input_begin + i], c.removed[i]);
                drop_x[c.input_begin + i] = true;
            }
            for (std::size_t i = 0; i < c.added.size(); ++i) {
                EXPECT_EQ(y[c.edit_begin + i], c.added[i]);
                drop_y[c.edit_begin + i] = true;
            }
        }
        for (std::size_t i = 0; i < x.size(); ++i) if (!drop_x[i]) cx.push_back(x[i]);
        for (std::size_t i = 0; i < y.size(); ++i) if (!drop_y[i]) cy.push_back(y[i]);
        EXPECT_EQ(cx, cy);
        // and that subsequence is a longest one.
        std::vector<std::vector<std::size_t>> lcs(x.size() + 1,
                                                  std::vector<std::size_t>(y.size() + 1));
        for (std::size_t i = 1; i <= x.size(); ++i)
            for (std::size_t j = 1; j <= y.size(); ++j)
                lcs[i][j] = x[i - 1] == y[j - 1] ? lcs[i - 1][j - 1] + 1
                                                 : std::max(lcs[i - 1][j], lcs[i][j - 1]);
        EXPECT_EQ(cx.size(), lcs[x.size()][y.size()]);
        EXPECT_EQ(d.changes.empty(), x == y);
    }
}
