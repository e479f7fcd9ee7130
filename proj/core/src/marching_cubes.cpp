#include "voxmerge/marching_cubes.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mc_tables.hpp"
#include "voxmerge/error.hpp"
#include "voxmerge/parallel.hpp"

namespace voxmerge {

namespace {

using EdgeKey = std::uint64_t;

// Edge keys identify a grid edge by its lower endpoint and axis, so that the
// four cells sharing an edge agree on it.
struct EdgeGeometry {
    std::array<int, 3> origin;  // offset of the lower endpoint within the cell
    int axis;
};

constexpr std::array<EdgeGeometry, 12> make_edge_geometry() {
    std::array<EdgeGeometry, 12> out{};
    for (std::size_t e = 0; e < 12; ++e) {
        const auto& c0 = detail::kCornerOffsets[detail::kEdgeCorners[e][0]];
        const auto& c1 = detail::kCornerOffsets[detail::kEdgeCorners[e][1]];
        int axis = 0;
        for (int k = 0; k < 3; ++k) {
            if (c0[k] != c1[k]) {
                axis = k;
            }
        }
        std::array<int, 3> lower{};
        for (int k = 0; k < 3; ++k) {
            lower[k] = c0[k] < c1[k] ? c0[k] : c1[k];
        }
        out[e] = {lower, axis};
    }
    return out;
}

constexpr auto kEdgeGeometry = make_edge_geometry();

}  // namespace

TexturedMesh marching_cubes(const VoxelGrid& sdf, float iso) {
    if (sdf.channels() != 1) {
        throw DimensionError("marching cubes needs a 1-channel field, got " +
                             std::to_string(sdf.channels()));
    }
    const std::size_t a = sdf.resolution();
    if (a < 2) {
        throw DimensionError("marching cubes needs A >= 2");
    }
    if (!std::isfinite(iso)) {
        throw DomainError("iso value must be finite");
    }
    const auto values = sdf.data();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DataError("non-finite field value at voxel " + std::to_string(i));
        }
    }

    const std::size_t cells = a - 1;
    const auto point_index = [a](std::size_t x, std::size_t y, std::size_t z) {
        return (z * a + y) * a + x;
    };

    // One triangle list (as edge keys) per layer of cells.
    std::vector<std::vector<std::array<EdgeKey, 3>>> layers(cells);
    parallel_for(0, cells, [&](std::size_t z_lo, std::size_t z_hi) {
        for (std::size_t z = z_lo; z < z_hi; ++z) {
            auto& tris = layers[z];
            for (std::size_t y = 0; y < cells; ++y) {
                for (std::size_t x = 0; x < cells; ++x) {
                    unsigned cube = 0;
                    for (int c = 0; c < 8; ++c) {
                        const auto& off = detail::kCornerOffsets[c];
                        if (values[point_index(x + off[0], y + off[1], z + off[2])] < iso) {
                            cube |= 1u << c;
                        }
                    }
                    if (detail::kEdgeTable[cube] == 0) {
                        continue;
                    }
                    const auto& row = detail::kTriTable[cube];
                    for (int t = 0; row[t] != -1; t += 3) {
                        std::array<EdgeKey, 3> keys{};
                        for (int k = 0; k < 3; ++k) {
                            const auto& g = kEdgeGeometry[row[t + k]];
                            const std::size_t p =
                                point_index(x + g.origin[0], y + g.origin[1], z + g.origin[2]);
                            keys[k] = static_cast<EdgeKey>(p) * 3 + g.axis;
                        }
                        // The case table winds triangles toward the inside.
                        std::swap(keys[1], keys[2]);
                        tris.push_back(keys);
                    }
                }
            }
        }
    });

    TexturedMesh raw;
    std::unordered_map<EdgeKey, std::uint32_t> vertex_of_edge;
    const double step = 2.0 / static_cast<double>(a);
    const auto vertex_for = [&](EdgeKey key) -> std::uint32_t {
        auto [it, inserted] =
            vertex_of_edge.try_emplace(key, static_cast<std::uint32_t>(raw.positions.size()));
        if (inserted) {
            const std::size_t p = key / 3;
            const int axis = static_cast<int>(key % 3);
            std::size_t coord[3] = {p % a, (p / a) % a, p / (a * a)};
            const double v1 = values[p];
            std::size_t q_coord[3] = {coord[0], coord[1], coord[2]};
            q_coord[axis] += 1;
            const double v2 = values[point_index(q_coord[0], q_coord[1], q_coord[2])];
            const double t = (static_cast<double>(iso) - v1) / (v2 - v1);
            std::array<float, 3> pos{};
            for (int k = 0; k < 3; ++k) {
                double c = voxel_center(coord[k], a);
                if (k == axis) {
                    c += t * step;
                }
                pos[k] = static_cast<float>(c);
            }
            raw.positions.push_back(pos);
        }
        return it->second;
    };
    for (const auto& layer : layers) {
        for (const auto& keys : layer) {
            raw.triangles.push_back({vertex_for(keys[0]), vertex_for(keys[1]), vertex_for(keys[2])});
        }
    }

    // Drop zero-area triangles and the vertices only they referenced.
    TexturedMesh mesh;
    std::vector<std::uint32_t> remap(raw.positions.size(), UINT32_MAX);
    for (const auto& tri : raw.triangles) {
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] ||
            triangle_area(raw, tri) == 0.0) {
            continue;
        }
        Triangle out{};
        for (int k = 0; k < 3; ++k) {
            auto& slot = remap[tri[k]];
            if (slot == UINT32_MAX) {
                slot = static_cast<std::uint32_t>(mesh.positions.size());
                mesh.positions.push_back(raw.positions[tri[k]]);
            }
            out[k] = slot;
        }
        mesh.triangles.push_back(out);
    }
    return mesh;
}

TexturedMesh extract_textured_mesh(const VoxelGrid& features, const FieldDecoder& decoder,
                                   float iso) {
    DecodedFields fields = decode_fields(features, decoder);
    return color_mesh(marching_cubes(fields.sdf, iso), fields.rgb);
}

}  // namespace voxmerge
