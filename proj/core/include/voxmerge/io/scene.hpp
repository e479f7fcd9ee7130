#pragma once

#include <filesystem>
#include <string>

#include "voxmerge/synth.hpp"

namespace voxmerge::io {

/// Scene JSON:
///
///   { "primitives": [
///       { "type": "sphere", "label": "head", "center": [0, 0.1, 0],
///         "radius": 0.3, "rgb": [0.9, 0.8, 0.1] },
///       { "type": "box", "label": "base", "center": [...],
///         "half_extents": [...], "rgb": [...] },
///       { "type": "cylinder", "label": "side", "center": [...],
///         "radius": 0.1, "half_height": 0.3, "axis": 1, "rgb": [...] } ] }
///
/// Throws SceneError on malformed documents; the result is validated.
SceneSpec parse_scene(const std::string& json_text);
SceneSpec read_scene(const std::filesystem::path& path);
std::string format_scene(const SceneSpec& scene);
void write_scene(const SceneSpec& scene, const std::filesystem::path& path);

}  // namespace voxmerge::io
