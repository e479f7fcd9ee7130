#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "voxmerge/chamfer.hpp"
#include "voxmerge/error.hpp"
#include "voxmerge/field.hpp"
#include "voxmerge/marching_cubes.hpp"
#include "voxmerge/mesh.hpp"
#include "voxmerge/parallel.hpp"
#include "voxmerge/synth.hpp"
#include "../../core/src/mc_tables.hpp"

using namespace voxmerge;

namespace {

VoxelGrid analytic_grid(std::size_t a, const std::function<double(const Vec3&)>& f) {
    VoxelGrid g(a, 1);
    for (std::size_t z = 0; z < a; ++z)
        for (std::size_t y = 0; y < a; ++y)
            for (std::size_t x = 0; x < a; ++x)
                g.at(x, y, z)[0] = static_cast<float>(f(voxel_center(VoxelIndex{x, y, z}, a)));
    return g;
}

double sphere_sdf(const Vec3& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 0.5; }

std::array<double, 3> normal_of(const TexturedMesh& m, const Triangle& t) {
    const auto& a = m.positions[t[0]];
    const auto& b = m.positions[t[1]];
    const auto& c = m.positions[t[2]];
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

}  // namespace

TEST(Decode, ChannelDecoderIsAProjection) {
    Rng rng(1);
    VoxelGrid g = oracle::random_grid(rng, 5, 6, 0.0, 1.0);
    const DecodedFields d = decode_fields(g, FieldDecoder::channel());
    for (std::size_t v = 0; v < g.voxel_count(); ++v) {
        EXPECT_EQ(d.sdf.voxel(v)[0], g.voxel(v)[0]);
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(d.rgb.voxel(v)[c], g.voxel(v)[c + 1]);
    }
}

TEST(Decode, CustomDecoderOnCoordinateGrid) {
    const std::size_t a = 8;
    VoxelGrid coords(a, 3);
    for (std::size_t v = 0; v < coords.voxel_count(); ++v) {
        const Vec3 p = voxel_center(coords.unravel(v), a);
        for (std::size_t c = 0; c < 3; ++c) coords.voxel(v)[c] = static_cast<float>(p[c]);
    }
    FieldDecoder sphere("sphere", 3, 3, [](std::span<const float> f) {
        FieldSample s;
        s.sdf = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]) - 0.5f;
        s.rgb = {1.0f, 0.0f, 0.0f};
        return s;
    });
    const DecodedFields d = decode_fields(coords, sphere);
    for (std::size_t v = 0; v < coords.voxel_count(); ++v) {
        EXPECT_NEAR(d.sdf.voxel(v)[0], sphere_sdf(voxel_center(coords.unravel(v), a)), 1e-6);
        EXPECT_EQ(d.rgb.voxel(v)[0], 1.0f);
    }
    EXPECT_THROW(decode_fields(VoxelGrid(2, 4), sphere), DimensionError);
    EXPECT_THROW(decode_fields(VoxelGrid(2, 3), FieldDecoder::channel()), DimensionError);
}

TEST(Decode, ColorsAreClampedAndNonFiniteRejected) {
    VoxelGrid g(1, 4, {0.0f, -1.0f, 2.0f, 0.5f});
    const DecodedFields d = decode_fields(g, FieldDecoder::channel());
    EXPECT_EQ(d.rgb.voxel(0)[0], 0.0f);
    EXPECT_EQ(d.rgb.voxel(0)[1], 1.0f);
    g.voxel(0)[0] = std::nanf("");
    EXPECT_THROW(decode_fields(g, FieldDecoder::channel()), DataError);
}

TEST(McTables, EdgeTableAgreesWithTriangleTable) {
    for (int cube = 0; cube < 256; ++cube) {
        std::uint16_t used = 0;
        for (int k = 0; k < 16 && detail::kTriTable[cube][k] >= 0; ++k) {
            used |= static_cast<std::uint16_t>(1u << detail::kTriTable[cube][k]);
        }
        // Every edge with a sign change appears in some triangle, and only
        // those edges do.
        std::uint16_t crossing = 0;
        for (int e = 0; e < 12; ++e) {
            const auto [c0, c1] = detail::kEdgeCorners[e];
            if (((cube >> c0) & 1) != ((cube >> c1) & 1)) crossing |= std::uint16_t(1u << e);
        }
        EXPECT_EQ(detail::kEdgeTable[cube], crossing) << "cube " << cube;
        EXPECT_EQ(used, crossing) << "cube " << cube;
    }
}

TEST(MarchingCubes, ConstantFieldGivesEmptyMesh) {
    VoxelGrid g(8, 1, std::vector<float>(512, 1.0f));
    EXPECT_TRUE(marching_cubes(g).empty());
    EXPECT_THROW(marching_cubes(VoxelGrid(1, 1)), DimensionError);
    EXPECT_THROW(marching_cubes(VoxelGrid(4, 2)), DimensionError);
    g.data()[100] = std::nanf("");
    EXPECT_THROW(marching_cubes(g), DataError);
}

TEST(MarchingCubes, SphereVerticesLieNearTheSurface) {
    for (std::size_t a : {32u, 64u}) {
        const TexturedMesh m = marching_cubes(analytic_grid(a, sphere_sdf));
        ASSERT_FALSE(m.empty());
        const double diag = 2.0 * std::sqrt(3.0) / static_cast<double>(a);
        for (const auto& p : m.positions) {
            EXPECT_LE(std::abs(sphere_sdf({p[0], p[1], p[2]})), diag);
        }
    }
}

TEST(MarchingCubes, BoxAndCylinderResiduals) {
    const SceneSpec shapes[] = {
        {{Primitive::box("b", {0.05, -0.1, 0.0}, {0.4, 0.3, 0.5}, {1, 1, 1})}},
        {{Primitive::cylinder("c", {0.0, 0.1, -0.05}, 0.35, 0.45, 2, {1, 1, 1})}},
    };
    for (const auto& scene : shapes) {
        for (std::size_t a : {32u, 64u}) {
            const RasterizedScene r = rasterize(scene, a, 4);
            const TexturedMesh m = marching_cubes(decode_fields(r.grid, FieldDecoder::channel()).sdf);
            ASSERT_FALSE(m.empty());
            const double diag = 2.0 * std::sqrt(3.0) / static_cast<double>(a);
            for (const auto& p : m.positions) {
                EXPECT_LE(std::abs(scene.sdf({p[0], p[1], p[2]})), diag);
            }
        }
    }
}

TEST(MarchingCubes, NormalsPointOutwardOnSphere) {
    const TexturedMesh m = marching_cubes(analytic_grid(32, sphere_sdf));
    for (const auto& t : m.triangles) {
        const auto n = normal_of(m, t);
        const auto& a = m.positions[t[0]];
        const auto& b = m.positions[t[1]];
        const auto& c = m.positions[t[2]];
        const double centroid[3] = {(a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3,
                                    (a[2] + b[2] + c[2]) / 3};
        EXPECT_GT(n[0] * centroid[0] + n[1] * centroid[1] + n[2] * centroid[2], 0.0);
    }
}

TEST(MarchingCubes, ClosedSurfaceIsWatertightAndConsistentlyWound) {
    const TexturedMesh m = marching_cubes(analytic_grid(24, sphere_sdf));
    // Each directed edge appears once and its reverse once.
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (const auto& t : m.triangles)
        for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
    for (const auto& [edge, count] : directed) {
        EXPECT_EQ(count, 1);
        EXPECT_EQ(directed.count({edge.second, edge.first}), 1u);
    }
}

TEST(MarchingCubes, SignFlipGivesSameVerticesOppositeOrientation) {
    VoxelGrid g = analytic_grid(20, [](const Vec3& p) {
        return std::sqrt(p[0] * p[0] + 2 * p[1] * p[1] + p[2] * p[2]) - 0.6 + 0.1 * p[0];
    });
    const TexturedMesh m = marching_cubes(g, 0.05f);
    for (float& v : g.data()) v = -v;
    const TexturedMesh f = marching_cubes(g, -0.05f);
    ASSERT_EQ(m.positions.size(), f.positions.size());
    std::set<std::array<float, 3>> pm(m.positions.begin(), m.positions.end());
    std::set<std::array<float, 3>> pf(f.positions.begin(), f.positions.end());
    EXPECT_EQ(pm, pf);
    // Total signed volume changes sign.
    auto volume = [](const TexturedMesh& mesh) {
        double vol = 0.0;
        for (const auto& t : mesh.triangles) {
            const auto& a = mesh.positions[t[0]];
            const auto& b = mesh.positions[t[1]];
            const auto& c = mesh.positions[t[2]];
            vol += (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                    a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0;
        }
        return vol;
    };
    EXPECT_GT(volume(m), 0.0);
    EXPECT_NEAR(volume(f), -volume(m), 1e-9);
}

TEST(MarchingCubes, NoDegenerateTrianglesAndValidIndices) {
    // Field values exactly at the iso level produce coincident vertices.
    VoxelGrid g = analytic_grid(16, [](const Vec3& p) { return std::round(p[0] * 4.0) / 4.0; });
    const TexturedMesh m = marching_cubes(g);
    ASSERT_FALSE(m.empty());
    m.validate();
    for (const auto& t : m.triangles) EXPECT_GT(triangle_area(m, t), 0.0);
}

TEST(MarchingCubes, DeterministicAcrossThreadCounts) {
    const VoxelGrid g = analytic_grid(40, sphere_sdf);
    set_thread_count(1);
    const TexturedMesh one = marching_cubes(g);
    set_thread_count(3);
    const TexturedMesh three = marching_cubes(g);
    set_thread_count(0);
    EXPECT_EQ(one, three);
}

TEST(ColorMesh, ConstantAndLinearFields) {
    const TexturedMesh m = marching_cubes(analytic_grid(16, sphere_sdf));
    VoxelGrid green(16, 3);
    for (std::size_t v = 0; v < green.voxel_count(); ++v) green.voxel(v)[1] = 1.0f;
    for (const auto& c : color_mesh(m, green).colors) EXPECT_EQ(c, (std::array<float, 3>{0, 1, 0}));

    VoxelGrid ramp(16, 3);
    for (std::size_t v = 0; v < ramp.voxel_count(); ++v) {
        ramp.voxel(v)[0] = static_cast<float>((voxel_center(ramp.unravel(v).x, 16) + 1.0) / 2.0);
    }
    const TexturedMesh colored = color_mesh(m, ramp);
    for (std::size_t i = 0; i < m.positions.size(); ++i) {
        const double x = std::clamp<double>(m.positions[i][0], voxel_center(0, 16),
                                            voxel_center(15, 16));
        EXPECT_NEAR(colored.colors[i][0], (x + 1.0) / 2.0, 1e-6);
    }
}

TEST(ColorMesh, OutsideVerticesClampToEdge) {
    TexturedMesh m;
    m.positions = {{5.0f, -5.0f, 0.0f}, {0, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    VoxelGrid rgb(4, 3);
    rgb.at(3, 0, 1)[2] = 1.0f;
    rgb.at(3, 0, 2)[2] = 1.0f;
    EXPECT_NEAR(color_mesh(m, rgb).colors[0][2], 1.0f, 1e-6);
}

TEST(SampleSurface, PointsLieInTheTriangle) {
    TexturedMesh m;
    m.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    const PointCloud pc = sample_surface(m, 500, 3);
    ASSERT_EQ(pc.size(), 500u);
    for (const auto& p : pc.points) {
        EXPECT_EQ(p[2], 0.0);
        EXPECT_GE(p[0], 0.0);
        EXPECT_GE(p[1], 0.0);
        EXPECT_LE(p[0] + p[1], 1.0 + 1e-12);
    }
}

TEST(SampleSurface, AreaProportionalCounts) {
    TexturedMesh m;
    // Areas 4.5 and 0.5.
    m.positions = {{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {10, 0, 0}, {11, 0, 0}, {10, 1, 0}};
    m.triangles = {{0, 1, 2}, {3, 4, 5}};
    const std::size_t n = 10000;
    const PointCloud pc = sample_surface(m, n, 7);
    std::size_t big = 0;
    for (const auto& p : pc.points) big += p[0] < 5.0;
    const double sigma = std::sqrt(n * 0.9 * 0.1);
    EXPECT_NEAR(static_cast<double>(big), 9000.0, 3.0 * sigma);
}

TEST(SampleSurface, DeterministicAndRejectsEmpty) {
    const TexturedMesh m = marching_cubes(analytic_grid(12, sphere_sdf));
    const PointCloud a = sample_surface(m, 300, 99);
    const PointCloud b = sample_surface(m, 300, 99);
    EXPECT_EQ(a.points, b.points);
    EXPECT_THROW(sample_surface(TexturedMesh{}, 10, 0), PreconditionError);
    EXPECT_THROW(sample_surface(m, 0, 0), PreconditionError);
}

TEST(Chamfer, HandExamples) {
    PointCloud a, b;
    a.points = {{0, 0, 0}};
    b.points = {{1, 0, 0}};
    EXPECT_DOUBLE_EQ(chamfer(a, b), 2.0);
    EXPECT_EQ(chamfer(a, a), 0.0);
    EXPECT_THROW(chamfer(a, PointCloud{}), PreconditionError);
}

TEST(Chamfer, KdTreeMatchesBruteForce) {
    Rng rng(12);
    for (std::size_t n : {1u, 2u, 7u, 100u, 2000u}) {
        PointCloud a, b;
        a.points = oracle::random_points(rng, n);
        b.points = oracle::random_points(rng, n / 2 + 1);
        const double fast = chamfer(a, b);
        EXPECT_NEAR(fast, oracle::chamfer(a.points, b.points), 1e-9);
        EXPECT_DOUBLE_EQ(fast, chamfer(b, a));
        EXPECT_GE(fast, 0.0);
    }
}

TEST(Chamfer, DuplicatesAndCollinearPoints) {
    PointCloud a, b;
    for (int i = 0; i < 50; ++i) a.points.push_back({0.1 * (i % 5), 0.0, 0.0});
    for (int i = 0; i < 30; ++i) b.points.push_back({0.03 * i, 0.0, 0.0});
    EXPECT_NEAR(chamfer(a, b), oracle::chamfer(a.points, b.points), 1e-12);
}

TEST(KdTree, NearestIndexIsExact) {
    Rng rng(13);
    const auto pts = oracle::random_points(rng, 500);
    const KdTree tree(pts);
    for (int q = 0; q < 200; ++q) {
        const Vec3 p = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
        double best = 1e300;
        for (const auto& s : pts) {
            const double d = (s[0] - p[0]) * (s[0] - p[0]) + (s[1] - p[1]) * (s[1] - p[1]) +
                             (s[2] - p[2]) * (s[2] - p[2]);
            best = std::min(best, d);
        }
        const auto hit = tree.nearest(p);
        EXPECT_EQ(hit.squared_distance, best);
        const auto& s = pts[hit.index];
        EXPECT_EQ((s[0] - p[0]) * (s[0] - p[0]) + (s[1] - p[1]) * (s[1] - p[1]) +
                      (s[2] - p[2]) * (s[2] - p[2]),
                  best);
    }
}
