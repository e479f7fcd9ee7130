#include "voxmerge/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"
#include "voxmerge/field.hpp"
#include "voxmerge/random.hpp"

namespace voxmerge {

void TexturedMesh::validate() const {
    if (!colors.empty() && colors.size() != positions.size()) {
        throw DataError("mesh has " + std::to_string(colors.size()) + " colors for " +
                        std::to_string(positions.size()) + " vertices");
    }
    for (const auto& p : positions) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) {
            throw DataError("mesh has a non-finite vertex coordinate");
        }
    }
    for (const auto& t : triangles) {
        for (auto idx : t) {
            if (idx >= positions.size()) {
                throw DataError("triangle index " + std::to_string(idx) + " out of range");
            }
        }
    }
}

double triangle_area(const TexturedMesh& mesh, const Triangle& tri) {
    const auto& a = mesh.positions[tri[0]];
    const auto& b = mesh.positions[tri[1]];
    const auto& c = mesh.positions[tri[2]];
    const double ux = double(b[0]) - a[0], uy = double(b[1]) - a[1], uz = double(b[2]) - a[2];
    const double vx = double(c[0]) - a[0], vy = double(c[1]) - a[1], vz = double(c[2]) - a[2];
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

TexturedMesh color_mesh(TexturedMesh mesh, const VoxelGrid& rgb) {
    if (rgb.channels() != 3) {
        throw DimensionError("color field must have 3 channels, got " +
                             std::to_string(rgb.channels()));
    }
    mesh.colors.resize(mesh.positions.size());
    for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
        const auto& p = mesh.positions[i];
        std::array<float, 3> c{};
        sample_trilinear(rgb, {p[0], p[1], p[2]}, c);
        for (auto& v : c) {
            v = std::clamp(v, 0.0f, 1.0f);
        }
        mesh.colors[i] = c;
    }
    return mesh;
}

PointCloud sample_surface(const TexturedMesh& mesh, std::size_t n, std::uint64_t seed) {
    if (mesh.triangles.empty()) {
        throw PreconditionError("cannot sample the surface of an empty mesh");
    }
    if (n == 0) {
        throw PreconditionError("surface sampling needs n >= 1");
    }
    std::vector<double> cumulative(mesh.triangles.size());
    double total = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        total += triangle_area(mesh, mesh.triangles[t]);
        cumulative[t] = total;
    }
    if (!(total > 0.0)) {
        throw PreconditionError("mesh has zero total area");
    }

    Rng rng(seed);
    PointCloud cloud;
    cloud.points.reserve(n);
    if (mesh.has_colors()) {
        cloud.colors.reserve(n);
    }
    for (std::size_t s = 0; s < n; ++s) {
        const double pick = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
        const std::size_t t = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
        const Triangle& tri = mesh.triangles[t];

        const double r1 = std::sqrt(rng.uniform());
        const double r2 = rng.uniform();
        const double w0 = 1.0 - r1;
        const double w1 = r1 * (1.0 - r2);
        const double w2 = r1 * r2;

        const auto& a = mesh.positions[tri[0]];
        const auto& b = mesh.positions[tri[1]];
        const auto& c = mesh.positions[tri[2]];
        cloud.points.push_back({w0 * a[0] + w1 * b[0] + w2 * c[0],
                                w0 * a[1] + w1 * b[1] + w2 * c[1],
                                w0 * a[2] + w1 * b[2] + w2 * c[2]});
        if (mesh.has_colors()) {
            const auto& ca = mesh.colors[tri[0]];
            const auto& cb = mesh.colors[tri[1]];
            const auto& cc = mesh.colors[tri[2]];
            std::array<float, 3> col{};
            for (int k = 0; k < 3; ++k) {
                col[k] = static_cast<float>(w0 * ca[k] + w1 * cb[k] + w2 * cc[k]);
            }
            cloud.colors.push_back(col);
        }
    }
    return cloud;
}

PointCloud vertices_as_cloud(const TexturedMesh& mesh) {
    PointCloud cloud;
    cloud.points.reserve(mesh.positions.size());
    for (const auto& p : mesh.positions) {
        cloud.points.push_back({p[0], p[1], p[2]});
    }
    cloud.colors = mesh.colors;
    return cloud;
}

}  // namespace voxmerge
