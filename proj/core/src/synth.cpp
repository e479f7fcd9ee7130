#include "voxmerge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"
#include "voxmerge/random.hpp"

namespace voxmerge {

PrimitiveKind primitive_kind_from_string(std::string_view name) {
    if (name == "sphere") return PrimitiveKind::sphere;
    if (name == "box") return PrimitiveKind::box;
    if (name == "cylinder") return PrimitiveKind::cylinder;
    throw SceneError("unknown primitive kind '" + std::string(name) + "'");
}

std::string_view to_string(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::sphere:
            return "sphere";
        case PrimitiveKind::box:
            return "box";
        case PrimitiveKind::cylinder:
            return "cylinder";
    }
    return "sphere";
}

double Primitive::sdf(const Vec3& p) const {
    const double dx = p[0] - center[0];
    const double dy = p[1] - center[1];
    const double dz = p[2] - center[2];
    switch (kind) {
        case PrimitiveKind::sphere:
            return std::sqrt(dx * dx + dy * dy + dz * dz) - radius;
        case PrimitiveKind::box: {
            const double qx = std::abs(dx) - half_extents[0];
            const double qy = std::abs(dy) - half_extents[1];
            const double qz = std::abs(dz) - half_extents[2];
            const double ox = std::max(qx, 0.0);
            const double oy = std::max(qy, 0.0);
            const double oz = std::max(qz, 0.0);
            return std::sqrt(ox * ox + oy * oy + oz * oz) +
                   std::min(std::max({qx, qy, qz}), 0.0);
        }
        case PrimitiveKind::cylinder: {
            const double d[3] = {dx, dy, dz};
            const double along = d[axis];
            const double r2 = dx * dx + dy * dy + dz * dz - along * along;
            const double radial = std::sqrt(std::max(r2, 0.0)) - radius;
            const double axial = std::abs(along) - half_height;
            const double o1 = std::max(radial, 0.0);
            const double o2 = std::max(axial, 0.0);
            return std::sqrt(o1 * o1 + o2 * o2) + std::min(std::max(radial, axial), 0.0);
        }
    }
    return 0.0;
}

Primitive Primitive::sphere(std::string label, Vec3 center, double radius,
                            std::array<float, 3> rgb) {
    Primitive p;
    p.kind = PrimitiveKind::sphere;
    p.label = std::move(label);
    p.center = center;
    p.radius = radius;
    p.rgb = rgb;
    return p;
}

Primitive Primitive::box(std::string label, Vec3 center, Vec3 half_extents,
                         std::array<float, 3> rgb) {
    Primitive p;
    p.kind = PrimitiveKind::box;
    p.label = std::move(label);
    p.center = center;
    p.half_extents = half_extents;
    p.rgb = rgb;
    return p;
}

Primitive Primitive::cylinder(std::string label, Vec3 center, double radius, double half_height,
                              int axis, std::array<float, 3> rgb) {
    Primitive p;
    p.kind = PrimitiveKind::cylinder;
    p.label = std::move(label);
    p.center = center;
    p.radius = radius;
    p.half_height = half_height;
    p.axis = axis;
    p.rgb = rgb;
    return p;
}

void SceneSpec::validate() const {
    if (primitives.empty()) {
        throw SceneError("scene needs at least one primitive");
    }
    std::set<std::string> seen;
    for (const auto& p : primitives) {
        if (!seen.insert(p.label).second) {
            throw SceneError("duplicate primitive label '" + p.label + "'");
        }
        for (float c : p.rgb) {
            if (!(c >= 0.0f && c <= 1.0f)) {
                throw SceneError("primitive '" + p.label + "' has a color outside [0,1]");
            }
        }
        for (double c : p.center) {
            if (!std::isfinite(c)) {
                throw SceneError("primitive '" + p.label + "' has a non-finite center");
            }
        }
        switch (p.kind) {
            case PrimitiveKind::sphere:
                if (!(p.radius > 0.0)) throw SceneError("sphere '" + p.label + "' needs radius > 0");
                break;
            case PrimitiveKind::box:
                for (double h : p.half_extents) {
                    if (!(h > 0.0)) throw SceneError("box '" + p.label + "' needs extents > 0");
                }
                break;
            case PrimitiveKind::cylinder:
                if (!(p.radius > 0.0) || !(p.half_height > 0.0)) {
                    throw SceneError("cylinder '" + p.label + "' needs radius and height > 0");
                }
                if (p.axis < 0 || p.axis > 2) {
                    throw SceneError("cylinder '" + p.label + "' axis must be 0, 1 or 2");
                }
                break;
        }
    }
}

double SceneSpec::sdf(const Vec3& p) const { return primitives[nearest(p)].sdf(p); }

std::size_t SceneSpec::nearest(const Vec3& p) const {
    std::size_t best = 0;
    double best_d = primitives[0].sdf(p);
    for (std::size_t i = 1; i < primitives.size(); ++i) {
        const double d = primitives[i].sdf(p);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

const Primitive* SceneSpec::find(std::string_view label) const {
    for (const auto& p : primitives) {
        if (p.label == label) return &p;
    }
    return nullptr;
}

const Mask3D& RasterizedScene::label_mask(std::string_view label) const {
    for (const auto& [name, mask] : labels) {
        if (name == label) return mask;
    }
    throw SceneError("no primitive labelled '" + std::string(label) + "'");
}

RasterizedScene rasterize(const SceneSpec& scene, std::size_t resolution, std::size_t channels) {
    if (channels < 4) {
        throw DimensionError("rasterized scenes need F >= 4 (sdf, r, g, b), got " +
                             std::to_string(channels));
    }
    scene.validate();
    RasterizedScene out{VoxelGrid(resolution, channels), {}};
    for (const auto& p : scene.primitives) {
        out.labels.emplace_back(p.label, Mask3D(resolution));
    }
    const std::size_t count = scene.primitives.size();
    parallel_for(0, resolution, [&](std::size_t z_lo, std::size_t z_hi) {
        for (std::size_t z = z_lo; z < z_hi; ++z) {
            for (std::size_t y = 0; y < resolution; ++y) {
                for (std::size_t x = 0; x < resolution; ++x) {
                    const Vec3 p = voxel_center(VoxelIndex{x, y, z}, resolution);
                    const std::size_t linear = out.grid.linear_index(x, y, z);
                    std::size_t best = 0;
                    double best_d = 0.0;
                    for (std::size_t k = 0; k < count; ++k) {
                        const double d = scene.primitives[k].sdf(p);
                        if (k == 0 || d < best_d) {
                            best_d = d;
                            best = k;
                        }
                        if (d <= 0.0) {
                            out.labels[k].second.set(linear);
                        }
                    }
                    auto v = out.grid.voxel(linear);
                    v[0] = static_cast<float>(best_d);
                    const auto& rgb = scene.primitives[best].rgb;
                    v[1] = rgb[0];
                    v[2] = rgb[1];
                    v[3] = rgb[2];
                }
            }
        }
    });
    return out;
}

EditPair make_edit_pair(const SceneSpec& original, const SceneSpec& edited,
                        const std::optional<std::string>& corrupt_label, std::size_t resolution,
                        std::size_t channels, const EditPairOptions& options) {
    original.validate();
    edited.validate();

    std::vector<const Primitive*> removed;
    std::vector<const Primitive*> added;
    for (const auto& p : original.primitives) {
        if (std::find(edited.primitives.begin(), edited.primitives.end(), p) ==
            edited.primitives.end()) {
            removed.push_back(&p);
        }
    }
    for (const auto& p : edited.primitives) {
        if (std::find(original.primitives.begin(), original.primitives.end(), p) ==
            original.primitives.end()) {
            added.push_back(&p);
        }
    }
    if (removed.size() > 1 || added.size() > 1 || removed.size() != added.size()) {
        throw SceneError("edited scene must differ from the original by at most one replaced "
                         "primitive (found " + std::to_string(removed.size()) + " removed, " +
                         std::to_string(added.size()) + " added)");
    }

    RasterizedScene ri = rasterize(original, resolution, channels);
    RasterizedScene re = rasterize(edited, resolution, channels);

    EditPair pair{std::move(ri.grid), re.grid, Mask3D(resolution), Mask3D(resolution),
                  std::move(re.grid), {}, {}};
    if (!removed.empty()) {
        pair.removed_label = removed.front()->label;
        pair.added_label = added.front()->label;
        pair.original_mask = ri.label_mask(removed.front()->label);
        pair.edited_mask = re.label_mask(added.front()->label);
    }

    if (corrupt_label) {
        const Primitive* in_original = original.find(*corrupt_label);
        const Primitive* in_edited = edited.find(*corrupt_label);
        if (!in_original || !in_edited || !(*in_original == *in_edited)) {
            throw SceneError("corrupt region '" + *corrupt_label +
                             "' must name a primitive left untouched by the edit");
        }
        const Mask3D& region = re.label_mask(*corrupt_label);
        if (region.intersects(pair.original_mask) || region.intersects(pair.edited_mask)) {
            throw SceneError("corrupt region '" + *corrupt_label + "' overlaps the edit masks");
        }
        Rng rng(options.corruption_seed);
        const double amp = options.corruption_amplitude;
        for (std::size_t i = 0; i < pair.edited.voxel_count(); ++i) {
            if (!region.test(i)) continue;
            for (float& v : pair.edited.voxel(i)) {
                v = static_cast<float>(v + rng.uniform(-amp, amp));
            }
        }
    }
    if (options.edited_offset != 0.0f) {
        for (float& v : pair.edited.data()) {
            v += options.edited_offset;
        }
    }
    return pair;
}

SceneSpec demo_original_scene() {
    return SceneSpec{{
        Primitive::box("base", {0.0, -0.45, 0.0}, {0.55, 0.2, 0.4}, {0.55f, 0.35f, 0.2f}),
        Primitive::sphere("head", {0.0, 0.1, 0.0}, 0.3, {0.9f, 0.8f, 0.1f}),
        Primitive::cylinder("side", {-0.62, 0.05, 0.0}, 0.12, 0.3, 1, {0.2f, 0.3f, 0.8f}),
    }};
}

SceneSpec demo_edited_scene() {
    SceneSpec scene = demo_original_scene();
    scene.primitives[1] =
        Primitive::cylinder("head_new", {0.05, 0.15, 0.0}, 0.22, 0.32, 1, {0.8f, 0.3f, 0.3f});
    return scene;
}

}  // namespace voxmerge
