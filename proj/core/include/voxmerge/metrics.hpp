#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace voxmerge {

/// Reported metric values are multiplied by this factor.
inline constexpr double kMetricReportScale = 100.0;

using Embedding = std::vector<double>;

/// Precomputed image and text embeddings for one edit.
///
/// image_input[i] / image_edited[i] embed view i of the input and edited
/// shapes; the text vectors embed the input prompt, the edit prompt, the
/// edited word(s) and the generic prompt.
struct EmbeddingSet {
    std::vector<Embedding> image_input;
    std::vector<Embedding> image_edited;
    Embedding text_input;
    Embedding text_edited;
    Embedding text_word;
    Embedding text_generic;

    std::size_t views() const noexcept { return image_input.size(); }
    std::size_t dimension() const noexcept { return text_input.size(); }

    /// Throws SchemaError on inconsistent sizes (or N = 0, D = 0) and
    /// DataError on non-finite values.
    void validate_shape() const;
    /// validate_shape() plus unit norm within `tolerance` for every vector.
    void validate(double tolerance = 1e-4) const;
};

/// Scales every vector to unit L2 norm. Vectors already within 1e-9 of unit
/// length are left bit-for-bit untouched; zero vectors raise DataError.
EmbeddingSet normalize_embeddings(EmbeddingSet set);

enum class DirectionVariant { dir, dir_cos, dir_avg, dir_avg_cos };
enum class DiffTarget { edit, noedit };

struct MetricOptions {
    /// Use 1 - cosine similarity wherever a cosine term appears.
    bool cosine_as_distance = false;
};

/// A raw (unscaled) metric value. Views whose term is undefined (zero
/// direction in a cosine variant, or max(x, y) <= 1e-6 in a relative
/// difference) are skipped; the value is the mean over the remaining terms,
/// or 0 when every term was skipped.
struct Score {
    double value = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

double dot(std::span<const double> a, std::span<const double> b);
/// Cosine similarity; the caller guarantees both norms are nonzero.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
/// |x - y| / max(x, y).
double relative_difference(double x, double y);

Score direction_score(const EmbeddingSet& e, DirectionVariant variant,
                      const MetricOptions& options = {});
Score diff_score(const EmbeddingSet& e, DiffTarget target, const MetricOptions& options = {});

struct MetricReport {
    Score clip_dir;
    Score clip_dir_cos;
    Score clip_dir_avg;
    Score clip_dir_avg_cos;
    Score clip_diff_edit;
    Score clip_diff_noedit;
};

/// All six metrics with values multiplied by kMetricReportScale.
MetricReport evaluate_metrics(const EmbeddingSet& e, const MetricOptions& options = {});

std::string_view to_string(DirectionVariant variant);

}  // namespace voxmerge
