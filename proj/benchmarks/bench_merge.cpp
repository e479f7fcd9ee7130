#include <benchmark/benchmark.h>

#include "voxmerge/mask_ops.hpp"
#include "voxmerge/merge.hpp"
#include "voxmerge/slab_source.hpp"
#include "voxmerge/synth.hpp"

using namespace voxmerge;

namespace {

const EditPair& pair_at(std::size_t a, std::size_t f) {
    static std::size_t cached_a = 0, cached_f = 0;
    static EditPair pair;
    if (a != cached_a || f != cached_f) {
        pair = make_edit_pair(demo_original_scene(), demo_edited_scene(), "base", a, f);
        cached_a = a;
        cached_f = f;
    }
    return pair;
}

void BM_Dilate(benchmark::State& state) {
    const auto a = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const Mask3D& m = pair_at(a, 4).edited_mask;
    for (auto _ : state) benchmark::DoNotOptimize(dilate3d(m, d));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m.voxel_count()));
}
BENCHMARK(BM_Dilate)->Args({64, 2})->Args({128, 2})->Args({128, 8})->Unit(benchmark::kMillisecond);

void BM_AverageMerge(benchmark::State& state) {
    const auto a = static_cast<std::size_t>(state.range(0));
    const auto f = static_cast<std::size_t>(state.range(1));
    const EditPair& p = pair_at(a, f);
    const MergeConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(average_merge(p.original, p.edited, p.original_mask, p.edited_mask, cfg));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * p.original.payload_bytes()));
}
BENCHMARK(BM_AverageMerge)->Args({64, 40})->Args({128, 40})->Unit(benchmark::kMillisecond);

void BM_MergeInPlace(benchmark::State& state) {
    const auto a = static_cast<std::size_t>(state.range(0));
    const EditPair& p = pair_at(a, 40);
    const MergeConfig cfg;
    for (auto _ : state) {
        state.PauseTiming();
        VoxelGrid target = p.original;
        GridSlabSource edited(p.edited);
        state.ResumeTiming();
        merge_in_place(MergeMode::average, target, edited, p.original_mask, p.edited_mask, cfg);
        benchmark::DoNotOptimize(target.data().data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * p.original.payload_bytes()));
}
BENCHMARK(BM_MergeInPlace)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
