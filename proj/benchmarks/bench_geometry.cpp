#include <benchmark/benchmark.h>

#include <cmath>

#include "voxmerge/chamfer.hpp"
#include "voxmerge/marching_cubes.hpp"
#include "voxmerge/mesh.hpp"
#include "voxmerge/random.hpp"
#include "voxmerge/triplane.hpp"

using namespace voxmerge;

namespace {

VoxelGrid sphere_sdf(std::size_t a) {
    VoxelGrid g(a, 1);
    for (std::size_t i = 0; i < g.voxel_count(); ++i) {
        const Vec3 p = voxel_center(g.unravel(i), a);
        g.voxel(i)[0] = static_cast<float>(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 0.5);
    }
    return g;
}

void BM_MarchingCubes(benchmark::State& state) {
    const VoxelGrid g = sphere_sdf(static_cast<std::size_t>(state.range(0)));
    std::size_t triangles = 0;
    for (auto _ : state) {
        const TexturedMesh m = marching_cubes(g);
        triangles = m.triangles.size();
        benchmark::DoNotOptimize(m.positions.data());
    }
    state.counters["triangles"] = static_cast<double>(triangles);
}
BENCHMARK(BM_MarchingCubes)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

PointCloud random_cloud(Rng& rng, std::size_t n) {
    PointCloud c;
    for (std::size_t i = 0; i < n; ++i) c.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    return c;
}

void BM_Chamfer(benchmark::State& state) {
    Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud a = random_cloud(rng, n), b = random_cloud(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(chamfer(a, b));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 2 * n));
}
BENCHMARK(BM_Chamfer)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SampleSurface(benchmark::State& state) {
    const TexturedMesh m = marching_cubes(sphere_sdf(64));
    for (auto _ : state) benchmark::DoNotOptimize(sample_surface(m, 10000, 0).points.data());
}
BENCHMARK(BM_SampleSurface)->Unit(benchmark::kMillisecond);

void BM_TriplaneSample(benchmark::State& state) {
    const auto a = static_cast<std::size_t>(state.range(0));
    TriplaneSet tp(64, 16, static_cast<TriplaneAggregation>(state.range(1)));
    Rng rng(2);
    for (auto p : {TriplaneSet::xy, TriplaneSet::xz, TriplaneSet::yz}) {
        for (float& v : tp.plane(p)) v = static_cast<float>(rng.uniform(-1, 1));
    }
    for (auto _ : state) benchmark::DoNotOptimize(sample_triplane(tp, a).data().data());
}
BENCHMARK(BM_TriplaneSample)->Args({64, 0})->Args({64, 1})->Args({128, 1})->Unit(benchmark::kMillisecond);

}  // namespace
