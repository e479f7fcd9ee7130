#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cli.hpp"
#include "temp_dir.hpp"
#include "voxmerge/io/vxg.hpp"
#include "voxmerge/mask_ops.hpp"

using namespace voxmerge;
using testing_support::TempDir;

namespace {

const std::filesystem::path kFixtures = VOXMERGE_FIXTURE_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "voxmerge");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

void make_pair(const TempDir& dir, const std::string& sub = "pair") {
    const Result r = invoke({"synth", "--pair", "-o", (dir / sub).string(), "-A", "20", "-F", "5",
                             "--corrupt", "side"});
    ASSERT_EQ(r.code, 0) << r.err;
}

}  // namespace

TEST(Cli, Levenshtein) {
    EXPECT_EQ(cli::levenshtein("theta", "thta"), 1u);
    EXPECT_EQ(cli::levenshtein("", "abc"), 3u);
    EXPECT_EQ(cli::levenshtein("kitten", "sitting"), 3u);
}

TEST(Cli, UsageErrorsExitOneWithSuggestions) {
    Result r = invoke({"merge", "--thta", "0.5"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_TRUE(contains(r.err, "--theta")) << r.err;
    r = invoke({"mrege"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_TRUE(contains(r.err, "merge")) << r.err;
    EXPECT_EQ(invoke({}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"merge", "--theta", "1.5"}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"merge", "--mode", "blend"}).code, cli::kExitUsage);
    EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST(Cli, DataErrorsExitTwo) {
    TempDir dir;
    Result r = invoke({"metrics", (dir / "missing.json").string()});
    EXPECT_EQ(r.code, cli::kExitData);
    EXPECT_TRUE(contains(r.err, "error:"));
    r = invoke({"mesh", "-i", (kFixtures / "hostile_huge.vxg").string(), "-o", (dir / "m.ply").string()});
    EXPECT_EQ(r.code, cli::kExitData);
    EXPECT_TRUE(contains(r.err, "byte offset")) << r.err;
}

TEST(Cli, MetricsOnIdentityFixtureAreAllZero) {
    const Result r = invoke({"metrics", (kFixtures / "identity_embeddings.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string name, value;
        fields >> name >> value;
        EXPECT_EQ(value, "0.000") << line;
        ++rows;
    }
    EXPECT_EQ(rows, 6);
    EXPECT_TRUE(contains(r.err, "resolved config"));
}

TEST(Cli, ChamferSelfDistanceIsZero) {
    const auto tri = (kFixtures / "one_triangle.ply").string();
    const Result r = invoke({"chamfer", tri, tri, "--samples", "500"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "0.000\n");
}

TEST(Cli, MergeOutputPreservesVoxelsOutsideTheEdit) {
    TempDir dir;
    make_pair(dir);
    const auto p = dir / "pair";
    const Result r = invoke({"merge", "--original", (p / "original.vxg").string(), "--edited",
                             (p / "edited.vxg").string(), "--original-mask", (p / "original_mask.msk").string(),
                             "--edited-mask", (p / "edited_mask.msk").string(), "-o", (dir / "out.vxg").string(),
                             "--theta", "0.5", "--dilation", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const VoxelGrid vi = io::read_grid(p / "original.vxg");
    const VoxelGrid out = io::read_grid(dir / "out.vxg");
    const Mask3D mi = io::read_mask(p / "original_mask.msk");
    const Mask3D touched = mask_or(dilate3d(io::read_mask(p / "edited_mask.msk"), 2), mi);
    std::size_t kept = 0;
    for (std::size_t v = 0; v < vi.voxel_count(); ++v) {
        if (touched.test(v)) continue;
        ++kept;
        for (std::size_t c = 0; c < vi.channels(); ++c) {
            ASSERT_EQ(std::memcmp(&vi.voxel(v)[c], &out.voxel(v)[c], sizeof(float)), 0);
        }
    }
    EXPECT_GT(kept, 0u);

    const Result functional = invoke({"merge", "--original", (p / "original.vxg").string(), "--edited",
                                      (p / "edited.vxg").string(), "--original-mask",
                                      (p / "original_mask.msk").string(), "--edited-mask",
                                      (p / "edited_mask.msk").string(), "-o", (dir / "out2.vxg").string(),
                                      "--no-in-place"});
    ASSERT_EQ(functional.code, 0) << functional.err;
    EXPECT_EQ(slurp(dir / "out.vxg"), slurp(dir / "out2.vxg"));
}

TEST(Cli, ConfigSuppliesDefaultsAndFlagsOverride) {
    TempDir dir;
    make_pair(dir);
    const auto p = dir / "pair";
    std::ofstream(dir / "cfg.json") << R"({"merge": {"original": ")" << (p / "original.vxg").string()
                                    << R"(", "edited": ")" << (p / "edited.vxg").string()
                                    << R"(", "original-mask": ")" << (p / "original_mask.msk").string()
                                    << R"(", "edited-mask": ")" << (p / "edited_mask.msk").string()
                                    << R"(", "output": ")" << (dir / "cfg.vxg").string()
                                    << R"(", "theta": 0.25, "dilation": 1}})";
    Result r = invoke({"--config", (dir / "cfg.json").string(), "merge"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.err, "\"theta\": 0.25")) << r.err;
    r = invoke({"--config", (dir / "cfg.json").string(), "merge", "--theta", "0.75"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.err, "\"theta\": 0.75")) << r.err;
    EXPECT_TRUE(contains(r.err, "\"dilation\": 1")) << r.err;
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
    TempDir dir;
    make_pair(dir, "a");
    make_pair(dir, "b");
    for (const char* f : {"original.vxg", "edited.vxg", "truth.vxg", "original_mask.msk", "edited_mask.msk"}) {
        EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
    }
    for (const char* name : {"m1.ply", "m2.ply"}) {
        const Result r = invoke({"mesh", "-i", (dir / "a" / "truth.vxg").string(), "-o", (dir / name).string()});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    EXPECT_EQ(slurp(dir / "m1.ply"), slurp(dir / "m2.ply"));
    const Result c1 = invoke({"chamfer", (dir / "m1.ply").string(), (kFixtures / "one_triangle.ply").string()});
    const Result c2 = invoke({"chamfer", (dir / "m1.ply").string(), (kFixtures / "one_triangle.ply").string()});
    EXPECT_EQ(c1.out, c2.out);
}

TEST(Cli, PromptDiffWorkedExample) {
    const Result r = invoke({"prompt-diff", "a chicken riding a bike", "a cat riding a bike"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "removed: chicken")) << r.out;
    EXPECT_TRUE(contains(r.out, "added: cat")) << r.out;
    EXPECT_TRUE(contains(r.out, "generic: a object riding a bike")) << r.out;
}

TEST(Cli, LiftMaskAndMeshPipeline) {
    TempDir dir;
    Result r = invoke({"synth", "-o", dir.path().string(), "-A", "16", "-F", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"mesh", "-i", (dir / "grid.vxg").string(), "-o", (dir / "m.ply").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "vertices ")) << r.out;
    r = invoke({"lift-mask", "-i", (dir / "grid.vxg").string(), "-o", (dir / "head.msk").string(),
                "--decoder", "channel", "--rgb", "0.9", "0.8", "0.1", "--threshold", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GT(io::read_mask(dir / "head.msk").popcount(), 0u);
}
