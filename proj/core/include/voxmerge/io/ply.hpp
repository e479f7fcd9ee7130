#pragma once

#include <filesystem>

#include "voxmerge/mesh.hpp"

namespace voxmerge::io {

/// Binary little-endian PLY. Vertices carry float x y z and, when the mesh
/// has colors, uchar red green blue (round(c * 255)). Faces are written as
/// a uchar-counted list of uint indices.
void write_mesh_ply(const TexturedMesh& mesh, const std::filesystem::path& path);

/// Reads binary little-endian or ascii PLY with triangle faces. Vertex
/// properties other than x y z red green blue are skipped. Colors come
/// back as c / 255.
TexturedMesh read_mesh_ply(const std::filesystem::path& path);

}  // namespace voxmerge::io
