#pragma once

#include <filesystem>
#include <string>

#include "voxmerge/metrics.hpp"

namespace voxmerge::io {

/// Parses the embeddings JSON document:
///
///   { "image_input": [[...], ...], "image_edited": [[...], ...],
///     "text_input": [...], "text_edited": [...],
///     "text_word": [...], "text_generic": [...] }
///
/// Unknown keys are ignored. Every vector is normalized to unit length.
/// Throws SchemaError on missing keys, wrong types or inconsistent sizes,
/// and DataError on non-finite or zero vectors.
EmbeddingSet parse_embeddings(const std::string& json_text);
EmbeddingSet read_embeddings(const std::filesystem::path& path);

/// Writes the set with shortest round-trip decimal formatting, so that
/// read_embeddings returns the same doubles for unit-norm input.
std::string format_embeddings(const EmbeddingSet& set);
void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);

}  // namespace voxmerge::io
