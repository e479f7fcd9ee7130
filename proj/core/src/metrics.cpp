#include "voxmerge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxmerge/error.hpp"

namespace voxmerge {

namespace {

constexpr double kZeroNorm = 1e-12;
constexpr double kRelativeGuard = 1e-6;
constexpr double kUnitSkip = 1e-9;

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Embedding difference(const Embedding& a, const Embedding& b) {
    Embedding out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = a[k] - b[k];
    }
    return out;
}

double cosine_term(std::span<const double> a, std::span<const double> b,
                   const MetricOptions& options) {
    const double s = cosine_similarity(a, b);
    return options.cosine_as_distance ? 1.0 - s : s;
}

void check_vector(const Embedding& v, std::size_t dim, const std::string& name) {
    if (v.size() != dim) {
        throw SchemaError(name + " has dimension " + std::to_string(v.size()) + ", expected " +
                          std::to_string(dim));
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw DataError(name + " contains a non-finite value");
        }
    }
}

}  // namespace

void EmbeddingSet::validate_shape() const {
    const std::size_t dim = dimension();
    if (dim == 0) {
        throw SchemaError("embeddings must have dimension >= 1");
    }
    if (image_input.empty()) {
        throw SchemaError("embedding set needs at least one view");
    }
    if (image_input.size() != image_edited.size()) {
        throw SchemaError("image_input has " + std::to_string(image_input.size()) +
                          " views but image_edited has " + std::to_string(image_edited.size()));
    }
    check_vector(text_input, dim, "text_input");
    check_vector(text_edited, dim, "text_edited");
    check_vector(text_word, dim, "text_word");
    check_vector(text_generic, dim, "text_generic");
    for (std::size_t i = 0; i < image_input.size(); ++i) {
        check_vector(image_input[i], dim, "image_input[" + std::to_string(i) + "]");
        check_vector(image_edited[i], dim, "image_edited[" + std::to_string(i) + "]");
    }
}

void EmbeddingSet::validate(double tolerance) const {
    validate_shape();
    const auto check_unit = [tolerance](const Embedding& v, const char* name) {
        if (std::abs(norm(v) - 1.0) > tolerance) {
            throw DataError(std::string(name) + " is not unit-normalized");
        }
    };
    check_unit(text_input, "text_input");
    check_unit(text_edited, "text_edited");
    check_unit(text_word, "text_word");
    check_unit(text_generic, "text_generic");
    for (const auto& v : image_input) check_unit(v, "image_input");
    for (const auto& v : image_edited) check_unit(v, "image_edited");
}

EmbeddingSet normalize_embeddings(EmbeddingSet set) {
    set.validate_shape();
    const auto normalize = [](Embedding& v) {
        const double n = norm(v);
        if (n <= kZeroNorm) {
            throw DataError("cannot normalize a zero embedding");
        }
        if (std::abs(n - 1.0) <= kUnitSkip) {
            return;
        }
        for (double& x : v) {
            x /= n;
        }
    };
    normalize(set.text_input);
    normalize(set.text_edited);
    normalize(set.text_word);
    normalize(set.text_generic);
    for (auto& v : set.image_input) normalize(v);
    for (auto& v : set.image_edited) normalize(v);
    return set;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    return dot(a, b) / (norm(a) * norm(b));
}

double relative_difference(double x, double y) { return std::abs(x - y) / std::max(x, y); }

Score direction_score(const EmbeddingSet& e, DirectionVariant variant,
                      const MetricOptions& options) {
    e.validate_shape();
    const Embedding text_dir = difference(e.text_edited, e.text_input);
    const bool text_zero = norm(text_dir) <= kZeroNorm;
    const std::size_t n = e.views();
    Score score;

    switch (variant) {
        case DirectionVariant::dir: {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += dot(difference(e.image_edited[i], e.image_input[i]), text_dir);
            }
            score.value = sum / static_cast<double>(n);
            score.evaluated = n;
            return score;
        }
        case DirectionVariant::dir_cos: {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const Embedding image_dir = difference(e.image_edited[i], e.image_input[i]);
                if (text_zero || norm(image_dir) <= kZeroNorm) {
                    ++score.skipped;
                    continue;
                }
                sum += cosine_term(image_dir, text_dir, options);
                ++score.evaluated;
            }
            score.value = score.evaluated ? sum / static_cast<double>(score.evaluated) : 0.0;
            return score;
        }
        case DirectionVariant::dir_avg:
        case DirectionVariant::dir_avg_cos: {
            Embedding mean_dir(e.dimension(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < mean_dir.size(); ++k) {
                    mean_dir[k] += e.image_edited[i][k] - e.image_input[i][k];
                }
            }
            for (double& x : mean_dir) {
                x /= static_cast<double>(n);
            }
            if (variant == DirectionVariant::dir_avg) {
                score.value = dot(mean_dir, text_dir);
                score.evaluated = 1;
                return score;
            }
            if (text_zero || norm(mean_dir) <= kZeroNorm) {
                score.skipped = 1;
                return score;
            }
            score.value = cosine_term(mean_dir, text_dir, options);
            score.evaluated = 1;
            return score;
        }
    }
    return score;
}

Score diff_score(const EmbeddingSet& e, DiffTarget target, const MetricOptions& options) {
    e.validate_shape();
    const Embedding& text = target == DiffTarget::edit ? e.text_word : e.text_generic;
    const bool text_zero = norm(text) <= kZeroNorm;
    Score score;
    double sum = 0.0;
    for (std::size_t i = 0; i < e.views(); ++i) {
        if (text_zero || norm(e.image_input[i]) <= kZeroNorm ||
            norm(e.image_edited[i]) <= kZeroNorm) {
            ++score.skipped;
            continue;
        }
        const double x = cosine_term(e.image_input[i], text, options);
        const double y = cosine_term(e.image_edited[i], text, options);
        if (std::max(x, y) <= kRelativeGuard) {
            ++score.skipped;
            continue;
        }
        sum += relative_difference(x, y);
        ++score.evaluated;
    }
    score.value = score.evaluated ? sum / static_cast<double>(score.evaluated) : 0.0;
    return score;
}

MetricReport evaluate_metrics(const EmbeddingSet& e, const MetricOptions& options) {
    const auto scaled = [](Score s) {
        s.value *= kMetricReportScale;
        return s;
    };
    return {
        scaled(direction_score(e, DirectionVariant::dir, options)),
        scaled(direction_score(e, DirectionVariant::dir_cos, options)),
        scaled(direction_score(e, DirectionVariant::dir_avg, options)),
        scaled(direction_score(e, DirectionVariant::dir_avg_cos, options)),
        scaled(diff_score(e, DiffTarget::edit, options)),
        scaled(diff_score(e, DiffTarget::noedit, options)),
    };
}

std::string_view to_string(DirectionVariant variant) {
    switch (variant) {
        case DirectionVariant::dir:
            return "clip_dir";
        case DirectionVariant::dir_cos:
            return "clip_dir_cos";
        case DirectionVariant::dir_avg:
            return "clip_dir_avg";
        case DirectionVariant::dir_avg_cos:
            return "clip_dir_avg_cos";
    }
    return "clip_dir";
}

}  // namespace voxmerge
