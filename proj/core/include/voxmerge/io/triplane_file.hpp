#pragma once

#include <filesystem>

#include "voxmerge/triplane.hpp"

namespace voxmerge::io {

/// Triplane container, laid out like VXG:
///
///   offset  size  field
///        0     4  magic "TPLF"
///        4     4  version (u32, = 1)
///        8     4  plane resolution R (u32)
///       12     4  channels per plane F' (u32)
///       16     1  dtype (0 = float32, the only value accepted)
///       17     3  reserved, zero
///
/// followed by the XY, XZ and YZ planes, each R * R * F' float32 values.
/// The aggregation mode is not stored.
void write_triplane(const TriplaneSet& tp, const std::filesystem::path& path);
TriplaneSet read_triplane(const std::filesystem::path& path,
                          TriplaneAggregation mode = TriplaneAggregation::concat);

}  // namespace voxmerge::io
