#pragma once

#include "voxmerge/field.hpp"
#include "voxmerge/mesh.hpp"
#include "voxmerge/voxel_grid.hpp"

namespace voxmerge {

/// Isosurface of a scalar grid (F = 1) sampled at voxel centers.
///
/// Corners with value < iso are inside. Vertices are placed on cell edges by
/// linear interpolation and shared between neighboring cells. Triangles are
/// wound so that their normals point toward increasing field values, and
/// zero-area triangles are dropped. Output order follows cells in x-fastest
/// order regardless of the thread count.
///
/// Throws DimensionError for F != 1 or A < 2 and DataError for non-finite
/// input. A field without a crossing yields an empty mesh.
TexturedMesh marching_cubes(const VoxelGrid& sdf, float iso = 0.0f);

/// Decodes the feature grid, extracts the iso surface of its SDF and colors
/// the vertices from its color field.
TexturedMesh extract_textured_mesh(const VoxelGrid& features, const FieldDecoder& decoder,
                                   float iso = 0.0f);

}  // namespace voxmerge
