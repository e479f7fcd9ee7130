#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config_json.hpp"
#include "voxmerge/chamfer.hpp"
#include "voxmerge/error.hpp"
#include "voxmerge/field.hpp"
#include "voxmerge/io/embeddings.hpp"
#include "voxmerge/io/ply.hpp"
#include "voxmerge/io/png.hpp"
#include "voxmerge/io/scene.hpp"
#include "voxmerge/io/triplane_file.hpp"
#include "voxmerge/io/vxg.hpp"
#include "voxmerge/marching_cubes.hpp"
#include "voxmerge/merge.hpp"
#include "voxmerge/metrics.hpp"
#include "voxmerge/multiview.hpp"
#include "voxmerge/parallel.hpp"
#include "voxmerge/prompt_diff.hpp"
#include "voxmerge/synth.hpp"
#include "voxmerge/triplane.hpp"

namespace voxmerge::cli {

namespace fs = std::filesystem;
using Paths = std::vector<std::string>;

namespace {

// Raised for argument combinations CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int precision) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

// Flags do not capture their default; record it so the resolved config
// shows the value in effect.
CLI::Option* add_flag(CLI::App& app, const std::string& name, bool& value, const std::string& help) {
    return app.add_flag(name, value, help)->default_str(value ? "true" : "false");
}

std::vector<fs::path> as_paths(const Paths& in) { return {in.begin(), in.end()}; }

void require_count(const Paths& paths, std::size_t n, const char* what) {
    if (paths.size() != n) {
        throw UsageError(std::string(what) + " needs " + std::to_string(n) + " path(s), got " +
                         std::to_string(paths.size()));
    }
}

ColorSpec color_spec(const std::vector<float>& rgb, float threshold) {
    ColorSpec spec;
    std::copy(rgb.begin(), rgb.end(), spec.rgb.begin());
    spec.threshold = threshold;
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------- lift-mask

struct LiftMask {
    std::string input, output, decoder;
    std::vector<float> rgb{0.0f, 1.0f, 0.0f};
    float threshold = 0.3f;

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Color field (F=3) or feature grid (with --decoder)")
            ->required();
        app.add_option("--output,-o", output, "Mask file to write")->required();
        app.add_option("--rgb", rgb, "Reference color")->expected(3)->check(CLI::Range(0.0, 1.0));
        app.add_option("--threshold", threshold, "Euclidean RGB distance threshold")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--decoder", decoder, "Decode features first (channel, sdf-only)");
    }

    void run(std::ostream& out) const {
        const ColorSpec spec = color_spec(rgb, threshold);
        VoxelGrid colors = io::read_grid(input);
        if (!decoder.empty()) {
            colors = decode_fields(colors, FieldDecoder::by_name(decoder)).rgb;
        }
        const Mask3D mask = extract_color_mask(colors, spec);
        io::write_mask(mask, output);
        out << "mask voxels " << mask.popcount() << " of " << mask.voxel_count() << "\n";
    }
};

// -------------------------------------------------------------------- merge

struct Merge {
    std::string original, edited, original_mask, edited_mask, output;
    std::string mode = "average";
    std::string empty = "zeros";
    std::size_t dilation = 2;
    float theta = 0.5f;
    int connectivity = 26;
    bool blend_from_pristine = false;
    bool in_place = true;

    void add(CLI::App& app) {
        app.add_option("--original", original, "Original grid V_i")->required();
        app.add_option("--edited", edited, "Edited grid V_e")->required();
        app.add_option("--original-mask", original_mask, "Removed region M_i")->required();
        app.add_option("--edited-mask", edited_mask, "Added region M_e")->required();
        app.add_option("--output,-o", output, "Merged grid to write")->required();
        app.add_option("--mode", mode, "Merge mode")
            ->check(CLI::IsMember({"average", "copy-paste"}));
        app.add_option("--dilation,-d", dilation, "Dilation iterations for the blend shell");
        app.add_option("--theta", theta, "Blend coefficient")->check(CLI::Range(0.0, 1.0));
        app.add_option("--connectivity", connectivity, "Dilation structuring element")
            ->check(CLI::IsMember({6, 26}));
        app.add_option("--empty", empty, "Feature written into nullified voxels")
            ->check(CLI::IsMember({"zeros", "corners"}));
        add_flag(app, "--blend-from-pristine", blend_from_pristine,
                 "Blend the shell from the untouched original");
        add_flag(app, "--in-place,!--no-in-place", in_place,
                 "Overwrite the loaded original and stream the edited grid by slabs");
    }

    void run(std::ostream& out) const {
        MergeConfig cfg;
        cfg.dilation = dilation;
        cfg.theta = theta;
        cfg.connectivity = connectivity_from_int(connectivity);
        cfg.empty_mode = empty_feature_mode_from_string(empty);
        cfg.blend_from_pristine = blend_from_pristine;
        cfg.validate();
        const MergeMode merge_mode = merge_mode_from_string(mode);

        const Mask3D mi = io::read_mask(original_mask);
        const Mask3D me = io::read_mask(edited_mask);
        VoxelGrid vi = io::read_grid(original);
        if (in_place) {
            io::VxgReader ve(edited);
            merge_in_place(merge_mode, vi, ve, mi, me, cfg);
            io::write_grid(vi, output);
        } else {
            const VoxelGrid ve = io::read_grid(edited);
            const VoxelGrid result = merge_mode == MergeMode::average
                                         ? average_merge(vi, ve, mi, me, cfg)
                                         : copy_paste_merge(vi, ve, mi, me, cfg);
            io::write_grid(result, output);
        }
        out << "merged " << to_string(merge_mode) << ": removed " << mi.popcount() << " voxels, added "
            << me.popcount() << " voxels\n";
    }
};

// --------------------------------------------------------------------- mesh

struct Mesh {
    std::string input, output;
    std::string decoder = "channel";
    float iso = 0.0f;

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Feature grid")->required();
        app.add_option("--output,-o", output, "PLY mesh to write")->required();
        app.add_option("--iso", iso, "Iso level of the SDF");
        app.add_option("--decoder", decoder, "Field decoder")
            ->check(CLI::IsMember({"channel", "sdf-only"}));
    }

    void run(std::ostream& out) const {
        const VoxelGrid grid = io::read_grid(input);
        const TexturedMesh mesh = extract_textured_mesh(grid, FieldDecoder::by_name(decoder), iso);
        io::write_mesh_ply(mesh, output);
        out << "vertices " << mesh.positions.size() << " triangles " << mesh.triangles.size()
            << "\n";
    }
};

// ------------------------------------------------------------------ chamfer

struct Chamfer {
    std::string a, b;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;

    void add(CLI::App& app) {
        app.add_option("a", a, "First PLY")->required();
        app.add_option("b", b, "Second PLY")->required();
        app.add_option("--samples,-n", samples, "Surface samples per mesh")
            ->check(CLI::PositiveNumber);
        app.add_option("--seed", seed, "Sampling seed (shared by both meshes)");
    }

    // Meshes are sampled; face-less PLY files are used as point clouds.
    PointCloud cloud(const std::string& path) const {
        const TexturedMesh mesh = io::read_mesh_ply(path);
        if (mesh.triangles.empty()) {
            if (mesh.positions.empty()) {
                throw PreconditionError("'" + path + "' has no vertices");
            }
            return vertices_as_cloud(mesh);
        }
        return sample_surface(mesh, samples, seed);
    }

    void run(std::ostream& out) const {
        out << fixed(chamfer(cloud(a), cloud(b)) * kChamferReportScale, 3) << "\n";
    }
};

// ------------------------------------------------------------------ metrics

struct Metrics {
    std::string input;
    bool cosine_as_distance = false;
    bool json = false;
    int precision = 3;

    void add(CLI::App& app) {
        app.add_option("embeddings", input, "Embeddings JSON")->required();
        add_flag(app, "--cosine-as-distance", cosine_as_distance,
                 "Use 1 - cosine similarity for every cosine term");
        add_flag(app, "--json", json, "Print a JSON object instead of a table");
        app.add_option("--precision", precision, "Decimals in the table")
            ->check(CLI::Range(0, 17));
    }

    void run(std::ostream& out) const {
        const EmbeddingSet set = io::read_embeddings(input);
        const MetricReport r = evaluate_metrics(set, MetricOptions{cosine_as_distance});
        const std::pair<const char*, const Score*> rows[] = {
            {"clip_dir", &r.clip_dir},
            {"clip_dir_cos", &r.clip_dir_cos},
            {"clip_dir_avg", &r.clip_dir_avg},
            {"clip_dir_avg_cos", &r.clip_dir_avg_cos},
            {"clip_diff_edit", &r.clip_diff_edit},
            {"clip_diff_noedit", &r.clip_diff_noedit},
        };
        if (json) {
            nlohmann::ordered_json doc;
            doc["views"] = set.views();
            doc["dimension"] = set.dimension();
            doc["scale"] = kMetricReportScale;
            for (const auto& [name, score] : rows) {
                doc[name] = {{"value", score->value}, {"skipped", score->skipped}};
            }
            out << doc.dump(2) << "\n";
            return;
        }
        out << "views " << set.views() << ", dimension " << set.dimension() << ", scores x"
            << kMetricReportScale << "\n";
        for (const auto& [name, score] : rows) {
            out << std::left << std::setw(18) << name << std::right << std::setw(12)
                << fixed(score->value, precision) << "  skipped " << score->skipped << "\n";
        }
    }
};

// -------------------------------------------------------------------- blend

struct Blend {
    Paths edited, original, masks, output;
    std::string downsample = "area_soft";
    bool resample = false;

    void add(CLI::App& app) {
        app.add_option("--edited", edited, "Edited images, one per view")->required();
        app.add_option("--original", original, "Original images, one per view")->required();
        app.add_option("--masks", masks, "Edit masks, one per view")->required();
        app.add_option("--output,-o", output, "Blended images to write")->required();
        app.add_option("--downsample", downsample, "Mask reduction when masks are larger")
            ->check(CLI::IsMember({"area_soft", "nearest_binary"}));
        add_flag(app, "--resample", resample, "Allow non-integer mask reduction factors");
    }

    void run(std::ostream& out) const {
        const std::size_t views = edited.size();
        require_count(original, views, "--original");
        require_count(masks, views, "--masks");
        require_count(output, views, "--output");
        const MultiViewFeature e = io::read_images_png(as_paths(edited));
        const MultiViewFeature o = io::read_images_png(as_paths(original));
        MaskStack2D m = io::read_masks_png(as_paths(masks));
        if (m.height() != e.height() || m.width() != e.width()) {
            m = downsample_mask(m, e.height(), e.width(), downsample_mode_from_string(downsample),
                                resample);
        }
        const MultiViewFeature blended = blend_features(e, o, m);
        for (std::size_t v = 0; v < views; ++v) {
            io::write_image_png(blended, v, output[v]);
        }
        out << "blended " << views << " view(s) at " << e.width() << "x" << e.height() << "\n";
    }
};

// -------------------------------------------------------------------- paint

struct Paint {
    Paths images, masks, output;
    std::vector<float> rgb{0.0f, 1.0f, 0.0f};

    void add(CLI::App& app) {
        app.add_option("--images", images, "Images, one per view")->required();
        app.add_option("--masks", masks, "Masks, one per view")->required();
        app.add_option("--output,-o", output, "Painted images to write")->required();
        app.add_option("--rgb", rgb, "Paint color")->expected(3)->check(CLI::Range(0.0, 1.0));
    }

    void run(std::ostream& out) const {
        require_count(masks, images.size(), "--masks");
        require_count(output, images.size(), "--output");
        const MultiViewFeature img = io::read_images_png(as_paths(images));
        const MaskStack2D m = io::read_masks_png(as_paths(masks));
        const MultiViewFeature painted = paint_masks(img, m, color_spec(rgb, 0.0f));
        for (std::size_t v = 0; v < images.size(); ++v) {
            io::write_image_png(painted, v, output[v]);
            out << "view " << v << ": painted " << m.popcount(v) << " pixels\n";
        }
    }
};

// -------------------------------------------------------------- prompt-diff

struct PromptDiffCmd {
    std::string input, edit;
    bool json = false;

    void add(CLI::App& app) {
        app.add_option("input", input, "Prompt of the input shape")->required();
        app.add_option("edit", edit, "Prompt of the edited shape")->required();
        add_flag(app, "--json", json, "Print a JSON object");
    }

    void run(std::ostream& out) const {
        const PromptDiff d = prompt_diff(input, edit);
        const bool changed = d.status == PromptDiff::Status::edit;
        if (json) {
            nlohmann::ordered_json doc;
            doc["status"] = changed ? "edit" : "no-edit";
            doc["changes"] = nlohmann::ordered_json::array();
            for (const auto& c : d.changes) {
                doc["changes"].push_back({{"removed", join_tokens(c.removed)},
                                          {"added", join_tokens(c.added)},
                                          {"generic", join_tokens(d.generic(c))}});
            }
            doc["generic"] = join_tokens(d.generic());
            out << doc.dump(2) << "\n";
            return;
        }
        out << "status: " << (changed ? "edit" : "no-edit") << "\n";
        for (std::size_t i = 0; i < d.changes.size(); ++i) {
            const auto& c = d.changes[i];
            const std::string tag = d.changes.size() > 1 ? " " + std::to_string(i + 1) : "";
            out << "removed" << tag << ": " << join_tokens(c.removed) << "\n";
            out << "added" << tag << ": " << join_tokens(c.added) << "\n";
        }
        out << "generic: " << join_tokens(d.generic()) << "\n";
    }
};

// --------------------------------------------------------------- mask-morph

struct MaskMorph {
    Paths input, output;
    int iterations = 1;
    std::string op = "dilate";

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Mask images, one per view")->required();
        app.add_option("--output,-o", output, "Mask images to write")->required();
        app.add_option("--iterations,-d", iterations,
                       "Rounds of 8-connected morphology; negative swaps the operation");
        app.add_option("--op", op, "Operation")->check(CLI::IsMember({"dilate", "erode"}));
    }

    void run(std::ostream& out) const {
        require_count(output, input.size(), "--output");
        const MaskStack2D m = io::read_masks_png(as_paths(input));
        const MaskStack2D r = morph2d(m, iterations, op == "dilate" ? MorphOp::dilate : MorphOp::erode);
        for (std::size_t v = 0; v < input.size(); ++v) {
            io::write_mask_png(r, v, output[v]);
            out << "view " << v << ": " << m.popcount(v) << " -> " << r.popcount(v) << " pixels\n";
        }
    }
};

// -------------------------------------------------------------------- synth

struct Synth {
    std::string scene, edited_scene, corrupt, output_dir;
    bool pair = false;
    std::size_t resolution = 256;
    std::size_t channels = 40;
    double amplitude = 0.3;
    std::uint64_t seed = 42;
    float offset = 0.0f;

    void add(CLI::App& app) {
        app.add_option("--output-dir,-o", output_dir, "Directory for the generated files")
            ->required();
        app.add_option("--scene", scene, "Scene JSON (default: built-in demo scene)");
        app.add_option("--edited-scene", edited_scene,
                       "Edited scene JSON; implies --pair (default: built-in demo edit)");
        add_flag(app, "--pair", pair, "Write an edit pair instead of a single scene");
        app.add_option("--corrupt", corrupt, "Label of an untouched primitive to damage in V_e");
        app.add_option("--resolution,-A", resolution, "Voxels per axis")
            ->check(CLI::PositiveNumber);
        app.add_option("--channels,-F", channels, "Feature channels (>= 4)")
            ->check(CLI::Range(std::size_t{4}, std::size_t{1} << 20));
        app.add_option("--amplitude", amplitude, "Corruption noise amplitude")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--seed", seed, "Corruption noise seed");
        app.add_option("--offset", offset, "Constant added to every channel of V_e");
    }

    void run(std::ostream& out) const {
        const fs::path dir(output_dir);
        fs::create_directories(dir);
        const SceneSpec original = scene.empty() ? demo_original_scene() : io::read_scene(scene);
        if (!pair && edited_scene.empty()) {
            const RasterizedScene r = rasterize(original, resolution, channels);
            io::write_grid(r.grid, dir / "grid.vxg");
            out << "wrote " << (dir / "grid.vxg").string() << "\n";
            for (const auto& [label, mask] : r.labels) {
                const fs::path p = dir / ("mask_" + label + ".msk");
                io::write_mask(mask, p);
                out << "wrote " << p.string() << " (" << mask.popcount() << " voxels)\n";
            }
            return;
        }
        const SceneSpec edited =
            edited_scene.empty() ? demo_edited_scene() : io::read_scene(edited_scene);
        EditPairOptions options;
        options.corruption_amplitude = amplitude;
        options.corruption_seed = seed;
        options.edited_offset = offset;
        const std::optional<std::string> label =
            corrupt.empty() ? std::nullopt : std::optional<std::string>(corrupt);
        const EditPair p = make_edit_pair(original, edited, label, resolution, channels, options);
        io::write_grid(p.original, dir / "original.vxg");
        io::write_grid(p.edited, dir / "edited.vxg");
        io::write_grid(p.truth, dir / "truth.vxg");
        io::write_mask(p.original_mask, dir / "original_mask.msk");
        io::write_mask(p.edited_mask, dir / "edited_mask.msk");
        out << "wrote edit pair to " << dir.string() << ": removed '"
            << p.removed_label.value_or("") << "' (" << p.original_mask.popcount()
            << " voxels), added '" << p.added_label.value_or("") << "' ("
            << p.edited_mask.popcount() << " voxels)\n";
    }
};

// ---------------------------------------------------------- triplane-sample

struct TriplaneSample {
    std::string input, output;
    std::size_t resolution = 256;
    std::string aggregation = "concat";

    void add(CLI::App& app) {
        app.add_option("--input,-i", input, "Triplane file")->required();
        app.add_option("--output,-o", output, "Grid to write")->required();
        app.add_option("--resolution,-A", resolution, "Voxels per axis")
            ->check(CLI::PositiveNumber);
        app.add_option("--aggregation", aggregation, "How the three plane samples combine")
            ->check(CLI::IsMember({"concat", "sum", "mean"}));
    }

    void run(std::ostream& out) const {
        const TriplaneSet tp =
            io::read_triplane(input, triplane_aggregation_from_string(aggregation));
        const VoxelGrid grid = sample_triplane(tp, resolution);
        io::write_grid(grid, output);
        out << "sampled " << resolution << "^3 x " << grid.channels() << " grid\n";
    }
};

// ---------------------------------------------------------------- plumbing

std::vector<std::string> long_names(const CLI::App& app) {
    std::vector<std::string> names;
    for (const CLI::Option* opt : app.get_options({})) {
        for (const auto& n : opt->get_lnames()) names.push_back("--" + n);
    }
    return names;
}

std::optional<std::string> closest(const std::string& word, const std::vector<std::string>& pool) {
    std::optional<std::string> best;
    std::size_t best_d = std::max<std::size_t>(2, word.size() / 3) + 1;
    for (const auto& candidate : pool) {
        const std::size_t d = levenshtein(word, candidate);
        if (d < best_d) {
            best_d = d;
            best = candidate;
        }
    }
    return best;
}

// Suggestions for unknown subcommands and long flags in the raw arguments.
std::vector<std::string> suggestions(const CLI::App& app, const std::vector<std::string>& args) {
    std::vector<std::string> subcommand_names;
    for (const CLI::App* sub : app.get_subcommands({})) subcommand_names.push_back(sub->get_name());

    const CLI::App* active = nullptr;
    std::size_t first_positional = args.size();
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i].rfind("-", 0) == 0) continue;
        if (first_positional == args.size()) first_positional = i;
        if (std::find(subcommand_names.begin(), subcommand_names.end(), args[i]) !=
            subcommand_names.end()) {
            active = app.get_subcommand(args[i]);
            break;
        }
    }

    std::vector<std::string> hints;
    if (!active && first_positional < args.size()) {
        if (auto s = closest(args[first_positional], subcommand_names)) {
            hints.push_back("unknown subcommand '" + args[first_positional] + "'; did you mean '" +
                            *s + "'?");
        }
    }
    std::vector<std::string> pool = long_names(app);
    if (active) {
        const auto more = long_names(*active);
        pool.insert(pool.end(), more.begin(), more.end());
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i].rfind("--", 0) != 0 || args[i] == "--") continue;
        const std::string flag = args[i].substr(0, args[i].find('='));
        if (std::find(pool.begin(), pool.end(), flag) != pool.end()) continue;
        if (auto s = closest(flag, pool)) {
            hints.push_back("unknown flag '" + flag + "'; did you mean '" + *s + "'?");
        } else {
            hints.push_back("unknown flag '" + flag + "'");
        }
    }
    return hints;
}

}  // namespace

std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Voxel feature merging, mesh extraction and edit metrics", "voxmerge"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "JSON file supplying option defaults");
    app.config_formatter(std::make_shared<ConfigJson>());
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = all cores)")
        ->envname("VOXMERGE_THREADS");
    app.require_subcommand(1);

    LiftMask lift_mask;
    Merge merge;
    Mesh mesh;
    Chamfer chamfer_cmd;
    Metrics metrics;
    Blend blend;
    Paint paint;
    PromptDiffCmd prompt;
    MaskMorph mask_morph;
    Synth synth;
    TriplaneSample triplane;

    std::vector<std::pair<CLI::App*, std::function<void()>>> commands;
    auto add = [&](const char* name, const char* help, auto& cmd) {
        CLI::App* sub = app.add_subcommand(name, help);
        cmd.add(*sub);
        commands.emplace_back(sub, [&cmd, &out] { cmd.run(out); });
    };
    add("lift-mask", "Threshold a color field against a reference color into a 3D mask", lift_mask);
    add("merge", "Merge an edited grid into the original (copy-paste or boundary averaging)",
        merge);
    add("mesh", "Extract a colored mesh from a feature grid", mesh);
    add("chamfer", "Chamfer distance between two meshes, x1e3", chamfer_cmd);
    add("metrics", "Directional CLIP metrics from precomputed embeddings, x100", metrics);
    add("blend", "Masked blend of edited and original multi-view images", blend);
    add("paint", "Paint masked pixels with a flat color", paint);
    add("prompt-diff", "Find the changed words between two prompts", prompt);
    add("mask-morph", "Dilate or erode 2D masks", mask_morph);
    add("synth", "Rasterize an analytic scene or edit pair", synth);
    add("triplane-sample", "Sample a voxel grid from a triplane", triplane);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        for (const auto& hint : suggestions(app, args)) err << "  " << hint << "\n";
        err << "Run 'voxmerge --help' for usage.\n";
        return kExitUsage;
    }

    if (threads > 0) set_thread_count(threads);
    err << "resolved config:\n" << app.config_to_str(true, false) << "\n";

    try {
        for (auto& [sub, fn] : commands) {
            if (sub->parsed()) fn();
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace voxmerge::cli
