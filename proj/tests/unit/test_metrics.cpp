#include <gtest/gtest.h>

#include <cmath>

#include "voxmerge/error.hpp"
#include "voxmerge/metrics.hpp"
#include "voxmerge/random.hpp"

using namespace voxmerge;

namespace {

Embedding random_unit(Rng& rng, std::size_t d) {
    Embedding v(d);
    double n = 0.0;
    for (double& x : v) {
        x = rng.uniform(-1, 1);
        n += x * x;
    }
    for (double& x : v) x /= std::sqrt(n);
    return v;
}

EmbeddingSet random_set(Rng& rng, std::size_t n, std::size_t d) {
    EmbeddingSet e;
    for (std::size_t i = 0; i < n; ++i) {
        e.image_input.push_back(random_unit(rng, d));
        e.image_edited.push_back(random_unit(rng, d));
    }
    e.text_input = random_unit(rng, d);
    e.text_edited = random_unit(rng, d);
    e.text_word = random_unit(rng, d);
    e.text_generic = random_unit(rng, d);
    return e;
}

EmbeddingSet hand_fixture() {
    EmbeddingSet e;
    e.image_input = {{1, 0}};
    e.image_edited = {{0, 1}};
    e.text_input = {1, 0};
    e.text_edited = {0, 1};
    e.text_word = {0, 1};
    e.text_generic = {1, 0};
    return e;
}

}  // namespace

TEST(Metrics, HandComputedTwoDimensionalFixture) {
    const EmbeddingSet e = hand_fixture();
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir).value, 2.0, 1e-9);
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir_cos).value, 1.0, 1e-9);
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir_avg).value, 2.0, 1e-9);
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir_avg_cos).value, 1.0, 1e-9);
    // Similarities to the edited word: input 0, edited 1 -> |0 - 1| / 1.
    EXPECT_NEAR(diff_score(e, DiffTarget::edit).value, 1.0, 1e-9);
    EXPECT_NEAR(diff_score(e, DiffTarget::noedit).value, 1.0, 1e-9);
    const MetricReport r = evaluate_metrics(e);
    EXPECT_NEAR(r.clip_dir.value, 200.0, 1e-9);
    EXPECT_NEAR(r.clip_dir_cos.value, 100.0, 1e-9);
}

TEST(Metrics, RelativeDifferenceExamples) {
    EXPECT_DOUBLE_EQ(relative_difference(0.2, 0.1), 0.5);
    EXPECT_DOUBLE_EQ(relative_difference(0.1, 0.2), 0.5);
    EXPECT_DOUBLE_EQ(relative_difference(0.4, 0.2), relative_difference(0.2, 0.1));
}

TEST(Metrics, DiffScoreOnKnownSimilarities) {
    EmbeddingSet e;
    const double s1 = 0.2, s2 = 0.1;
    e.image_input = {{s1, std::sqrt(1 - s1 * s1)}};
    e.image_edited = {{s2, std::sqrt(1 - s2 * s2)}};
    e.text_input = e.text_edited = e.text_generic = {0, 1};
    e.text_word = {1, 0};
    EXPECT_NEAR(diff_score(e, DiffTarget::edit).value, 0.5, 1e-12);
}

TEST(Metrics, IdentityGivesZeroEverywhere) {
    Rng rng(1);
    EmbeddingSet e = random_set(rng, 7, 16);
    e.image_edited = e.image_input;
    const MetricReport r = evaluate_metrics(e);
    for (const Score* s : {&r.clip_dir, &r.clip_dir_cos, &r.clip_dir_avg, &r.clip_dir_avg_cos,
                           &r.clip_diff_edit, &r.clip_diff_noedit}) {
        EXPECT_EQ(s->value, 0.0);
    }
    EXPECT_EQ(r.clip_dir_cos.skipped, 7u);
    EXPECT_EQ(r.clip_dir_avg_cos.skipped, 1u);
}

TEST(Metrics, DirEqualsDirAvg) {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const EmbeddingSet e = random_set(rng, 70, 512);
        EXPECT_NEAR(direction_score(e, DirectionVariant::dir).value,
                    direction_score(e, DirectionVariant::dir_avg).value, 1e-6);
    }
}

TEST(Metrics, ReportIsScaledByExactlyOneHundred) {
    Rng rng(3);
    const EmbeddingSet e = random_set(rng, 5, 8);
    const MetricReport r = evaluate_metrics(e);
    EXPECT_EQ(r.clip_dir.value, direction_score(e, DirectionVariant::dir).value * 100.0);
    EXPECT_EQ(r.clip_diff_noedit.value, diff_score(e, DiffTarget::noedit).value * 100.0);
}

TEST(Metrics, CosineVariantIgnoresDirectionScaleDotDoesNot) {
    Rng rng(4);
    EmbeddingSet e = random_set(rng, 3, 6);
    const double cos_before = direction_score(e, DirectionVariant::dir_cos).value;
    const double dot_before = direction_score(e, DirectionVariant::dir).value;
    // Scale view 1's image direction by 3 while keeping its input.
    for (std::size_t k = 0; k < 6; ++k) {
        e.image_edited[1][k] = e.image_input[1][k] + 3.0 * (e.image_edited[1][k] - e.image_input[1][k]);
    }
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir_cos).value, cos_before, 1e-12);
    EXPECT_GT(std::abs(direction_score(e, DirectionVariant::dir).value - dot_before), 1e-6);
}

TEST(Metrics, DiffIsSymmetricInInputAndEdited) {
    Rng rng(5);
    EmbeddingSet e = random_set(rng, 10, 32);
    const double a = diff_score(e, DiffTarget::edit).value;
    std::swap(e.image_input, e.image_edited);
    EXPECT_NEAR(diff_score(e, DiffTarget::edit).value, a, 1e-12);
}

TEST(Metrics, GuardSkipsNonPositiveSimilarities) {
    EmbeddingSet e = hand_fixture();
    e.text_word = {-1, 0};  // similarities -1 and 0
    const Score s = diff_score(e, DiffTarget::edit);
    EXPECT_EQ(s.skipped, 1u);
    EXPECT_EQ(s.evaluated, 0u);
    EXPECT_EQ(s.value, 0.0);
}

TEST(Metrics, CosineAsDistanceFlag) {
    const EmbeddingSet e = hand_fixture();
    MetricOptions opt;
    opt.cosine_as_distance = true;
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir_cos, opt).value, 0.0, 1e-12);
    EXPECT_NEAR(direction_score(e, DirectionVariant::dir, opt).value, 2.0, 1e-12);
}

TEST(Metrics, NormalizationAndValidation) {
    EmbeddingSet e = hand_fixture();
    e.text_word = {0, 3};
    const EmbeddingSet n = normalize_embeddings(e);
    EXPECT_EQ(n.text_word, (Embedding{0, 1}));
    EXPECT_NO_THROW(n.validate());
    EXPECT_THROW(e.validate(), DataError);
    e.text_word = {0, 0};
    EXPECT_THROW(normalize_embeddings(e), DataError);
    e = hand_fixture();
    e.text_generic = {1, 0, 0};
    EXPECT_THROW(e.validate_shape(), SchemaError);
    e = hand_fixture();
    e.image_edited.push_back({1, 0});
    EXPECT_THROW(e.validate_shape(), SchemaError);
    e = hand_fixture();
    e.image_input[0][0] = std::nan("");
    EXPECT_THROW(e.validate_shape(), DataError);
}
