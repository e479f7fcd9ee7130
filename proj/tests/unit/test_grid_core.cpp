#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "voxmerge/error.hpp"
#include "voxmerge/mask_ops.hpp"
#include "voxmerge/parallel.hpp"
#include "voxmerge/triplane.hpp"
#include "voxmerge/voxel_grid.hpp"

using namespace voxmerge;

TEST(VoxelGrid, LayoutIsChannelFastestThenXYZ) {
    VoxelGrid g(3, 2);
    g.at(1, 2, 0)[1] = 7.0f;
    EXPECT_EQ(g.data()[((0 * 3 + 2) * 3 + 1) * 2 + 1], 7.0f);
    EXPECT_EQ(g.unravel(g.linear_index(2, 0, 1)), (VoxelIndex{2, 0, 1}));
}

TEST(VoxelGrid, RejectsZeroSizesAndWrongPayload) {
    EXPECT_THROW(VoxelGrid(0, 1), DimensionError);
    EXPECT_THROW(VoxelGrid(2, 0), DimensionError);
    EXPECT_THROW(VoxelGrid(2, 1, std::vector<float>(7)), DimensionError);
}

TEST(VoxelGrid, CentersAndContinuousIndexAreInverse) {
    EXPECT_DOUBLE_EQ(voxel_center(0, 4), -0.75);
    EXPECT_DOUBLE_EQ(voxel_center(3, 4), 0.75);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_NEAR(continuous_index(voxel_center(i, 9), 9), static_cast<double>(i), 1e-12);
    }
    EXPECT_EQ(continuous_index(-1.0, 4), 0.0);
    EXPECT_EQ(continuous_index(5.0, 4), 3.0);
}

TEST(ColorMask, SpecExamples) {
    VoxelGrid colors(1, 3, {0.0f, 1.0f, 0.0f});
    EXPECT_TRUE(extract_color_mask(colors, {}).test(0));
    colors = VoxelGrid(1, 3, {1.0f, 1.0f, 1.0f});
    EXPECT_FALSE(extract_color_mask(colors, {}).test(0));
    colors = VoxelGrid(1, 3, {0.1f, 0.9f, 0.1f});
    EXPECT_TRUE(extract_color_mask(colors, {}).test(0));
}

TEST(ColorMask, Errors) {
    EXPECT_THROW(extract_color_mask(VoxelGrid(2, 4), {}), DimensionError);
    ColorSpec bad;
    bad.threshold = -0.1f;
    EXPECT_THROW(extract_color_mask(VoxelGrid(2, 3), bad), DomainError);
    bad = ColorSpec{};
    bad.rgb[0] = 1.5f;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(ColorMask, MatchesPerVoxelDistanceAndIsThresholdMonotone) {
    Rng rng(11);
    const VoxelGrid colors = oracle::random_grid(rng, 6, 3, 0.0, 1.0);
    Mask3D previous(6);
    for (float tau : {0.0f, 0.1f, 0.3f, 0.6f, 1.0f, 2.0f}) {
        ColorSpec spec;
        spec.threshold = tau;
        const Mask3D m = extract_color_mask(colors, spec);
        for (std::size_t v = 0; v < colors.voxel_count(); ++v) {
            const auto c = colors.voxel(v);
            const double d = std::sqrt(double(c[0]) * c[0] + (c[1] - 1.0) * (c[1] - 1.0) +
                                       double(c[2]) * c[2]);
            EXPECT_EQ(m.test(v), d <= tau);
        }
        EXPECT_TRUE(previous.subset_of(m));
        previous = m;
    }
}

TEST(Dilate, SingleVoxelNeighborhoods) {
    Mask3D m(5);
    m.set(2, 2, 2);
    EXPECT_EQ(dilate3d(m, 1, Connectivity::full26).popcount(), 27u);
    EXPECT_EQ(dilate3d(m, 1, Connectivity::face6).popcount(), 7u);
    EXPECT_EQ(dilate3d(m, 0), m);
    EXPECT_EQ(dilate3d(m, 2, Connectivity::full26).popcount(), 125u);
    EXPECT_EQ(dilate3d(m, 2, Connectivity::face6).popcount(), 25u);
}

TEST(Dilate, MatchesBruteForceOnRandomMasks) {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t a = 1 + rng.below(8);
        const Mask3D m = oracle::random_mask(rng, a, rng.uniform(0.0, 0.2));
        const std::size_t d = rng.below(4);
        for (int conn : {6, 26}) {
            EXPECT_EQ(dilate3d(m, d, connectivity_from_int(conn)), oracle::dilate(m, d, conn))
                << "A=" << a << " d=" << d << " conn=" << conn;
        }
    }
}

TEST(Dilate, ExtensiveAndMonotone) {
    Rng rng(6);
    for (int trial = 0; trial < 40; ++trial) {
        const Mask3D m = oracle::random_mask(rng, 6, 0.05);
        for (auto conn : {Connectivity::face6, Connectivity::full26}) {
            Mask3D prev = m;
            for (std::size_t d = 0; d <= 4; ++d) {
                const Mask3D cur = dilate3d(m, d, conn);
                EXPECT_TRUE(m.subset_of(cur));
                EXPECT_TRUE(prev.subset_of(cur));
                prev = cur;
            }
        }
    }
}

TEST(Dilate, ResultIndependentOfThreadCount) {
    Rng rng(8);
    const Mask3D m = oracle::random_mask(rng, 24, 0.01);
    set_thread_count(1);
    const Mask3D one = dilate3d(m, 3);
    set_thread_count(4);
    const Mask3D four = dilate3d(m, 3);
    set_thread_count(0);
    EXPECT_EQ(one, four);
}

TEST(MaskXor, Identities) {
    Rng rng(3);
    const Mask3D a = oracle::random_mask(rng, 4, 0.3);
    EXPECT_TRUE(mask_xor(a, a).empty());
    Mask3D b(4);
    for (std::size_t v = 0; v < b.voxel_count(); ++v) b.set(v, !a.test(v) && rng.uniform() < 0.5);
    EXPECT_EQ(mask_xor(a, b), mask_or(a, b));
    EXPECT_THROW(mask_xor(a, Mask3D(5)), DimensionError);
}

TEST(MaskXor, ShellAroundMaskIsDisjointAndThin) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Mask3D me = oracle::random_mask(rng, 4, 0.15);
        const Mask3D shell = mask_xor(me, dilate3d(me, 1));
        EXPECT_FALSE(shell.intersects(me));
        // Brute force: every shell voxel has a 26-neighbor in M_e.
        for (std::size_t z = 0; z < 4; ++z)
            for (std::size_t y = 0; y < 4; ++y)
                for (std::size_t x = 0; x < 4; ++x) {
                    if (!shell.test(x, y, z)) continue;
                    bool near = false;
                    for (int dz = -1; dz <= 1; ++dz)
                        for (int dy = -1; dy <= 1; ++dy)
                            for (int dx = -1; dx <= 1; ++dx) {
                                const long nx = long(x) + dx, ny = long(y) + dy, nz = long(z) + dz;
                                if (nx < 0 || ny < 0 || nz < 0 || nx > 3 || ny > 3 || nz > 3)
                                    continue;
                                near = near || me.test(nx, ny, nz);
                            }
                    EXPECT_TRUE(near);
                }
    }
}

TEST(Triplane, ConstantPlanesSumAndConcatShape) {
    const std::size_t r = 5, f = 4;
    TriplaneSet tp(r, f, std::vector<float>(r * r * f, 1.0f), std::vector<float>(r * r * f, 2.0f),
                   std::vector<float>(r * r * f, 4.0f), TriplaneAggregation::sum);
    const VoxelGrid sum = sample_triplane(tp, 6);
    for (float v : sum.data()) EXPECT_EQ(v, 7.0f);
    tp.set_aggregation(TriplaneAggregation::concat);
    const VoxelGrid cat = sample_triplane(tp, 3);
    EXPECT_EQ(cat.channels(), 12u);
    EXPECT_EQ(cat.at(1, 1, 1)[0], 1.0f);
    EXPECT_EQ(cat.at(1, 1, 1)[4], 2.0f);
    EXPECT_EQ(cat.at(1, 1, 1)[8], 4.0f);
}

TEST(Triplane, ReproducesBilinearFunctionAtTexelCenters) {
    const std::size_t r = 8;
    TriplaneSet tp(r, 1, TriplaneAggregation::concat);
    for (auto plane : {TriplaneSet::xy, TriplaneSet::xz, TriplaneSet::yz}) {
        for (std::size_t v = 0; v < r; ++v)
            for (std::size_t u = 0; u < r; ++u) {
                tp.texel(plane, u, v)[0] =
                    static_cast<float>(voxel_center(u, r) + 2.0 * voxel_center(v, r));
            }
    }
    // Grid nodes coincide with texel centers when A == R.
    const VoxelGrid g = sample_triplane(tp, r);
    for (std::size_t z = 0; z < r; ++z)
        for (std::size_t y = 0; y < r; ++y)
            for (std::size_t x = 0; x < r; ++x) {
                const Vec3 p = voxel_center(VoxelIndex{x, y, z}, r);
                EXPECT_NEAR(g.at(x, y, z)[0], p[0] + 2 * p[1], 1e-6);
                EXPECT_NEAR(g.at(x, y, z)[1], p[0] + 2 * p[2], 1e-6);
                EXPECT_NEAR(g.at(x, y, z)[2], p[1] + 2 * p[2], 1e-6);
            }
    // Off-node samples inside the texel-center hull are exact as well.
    std::array<float, 1> out{};
    sample_plane_bilinear(tp, TriplaneSet::xy, 0.1234, -0.3579, out);
    EXPECT_NEAR(out[0], 0.1234 - 2 * 0.3579, 1e-6);
    // Outside the hull the sample clamps to the edge texels.
    sample_plane_bilinear(tp, TriplaneSet::xy, 1.0, -1.0, out);
    EXPECT_NEAR(out[0], voxel_center(r - 1, r) + 2 * voxel_center(0, r), 1e-6);
}

TEST(Triplane, SumIsThreeTimesMean) {
    Rng rng(9);
    const std::size_t r = 6, f = 3;
    auto plane = [&] {
        std::vector<float> p(r * r * f);
        for (float& x : p) x = static_cast<float>(rng.uniform(-1, 1));
        return p;
    };
    TriplaneSet tp(r, f, plane(), plane(), plane(), TriplaneAggregation::sum);
    const VoxelGrid sum = sample_triplane(tp, 7);
    tp.set_aggregation(TriplaneAggregation::mean);
    const VoxelGrid mean = sample_triplane(tp, 7);
    for (std::size_t i = 0; i < sum.data().size(); ++i) {
        EXPECT_NEAR(sum.data()[i], 3.0f * mean.data()[i], 1e-5);
    }
}

TEST(Triplane, ShapeMismatchIsDimensionError) {
    EXPECT_THROW(TriplaneSet(4, 2, std::vector<float>(32), std::vector<float>(32),
                             std::vector<float>(31)),
                 DimensionError);
    EXPECT_EQ(triplane_aggregation_from_string("mean"), TriplaneAggregation::mean);
}
