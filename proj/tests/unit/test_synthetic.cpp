#include <doctest.h>

#include <cmath>

#include "ocrect/synthetic.hpp"

#include "../support/test_util.hpp"

using namespace ocrect;
using testutil::TempDir;

namespace {

bool has_out_of_tag_pseudo(const SyntheticSample& s) {
    for (std::uint8_t v : s.pseudo_mask.values) {
        if (v != 0 && v != kIgnoreLabel && !s.tags.contains(v)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("zero noise means pseudo equals ground truth") {
    SynthConfig cfg;
    cfg.seed = 9;
    cfg.num_images = 12;
    cfg.noise_rate = 0.0;
    cfg.height = 16;
    cfg.width = 16;
    cfg.classes = 5;
    cfg.feature_dim = 4;
    for (const SyntheticSample& s : generate_synthetic(cfg)) {
        CHECK(s.pseudo_mask.values == s.gt_mask.values);
    }
}

TEST_CASE("generation is a pure function of its arguments") {
    SynthConfig cfg;
    cfg.seed = 1234;
    cfg.num_images = 6;
    cfg.height = 16;
    cfg.width = 20;
    cfg.classes = 4;
    cfg.feature_dim = 3;
    cfg.noise_rate = 0.4;

    const auto a = generate_synthetic(cfg);
    const auto b = generate_synthetic(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gt_mask.values == b[i].gt_mask.values);
        CHECK(a[i].pseudo_mask.values == b[i].pseudo_mask.values);
        CHECK(a[i].features.data == b[i].features.data);
        CHECK(a[i].tags.tags == b[i].tags.tags);
        CHECK(a[i].tags.image_id == b[i].tags.image_id);
    }
}

TEST_CASE("tags equal exactly the foreground classes present in the ground truth") {
    SynthConfig cfg;
    cfg.seed = 77;
    cfg.num_images = 30;
    cfg.height = 12;
    cfg.width = 12;
    cfg.classes = 6;
    cfg.feature_dim = 2;
    for (const SyntheticSample& s : generate_synthetic(cfg)) {
        std::vector<bool> present(cfg.classes + 1, false);
        for (std::uint8_t v : s.gt_mask.values) present[v] = true;
        std::vector<int> expected;
        for (int k = 1; k <= cfg.classes; ++k) {
            if (present[k]) expected.push_back(k);
        }
        CHECK(s.tags.tags == expected);
        CHECK_FALSE(s.tags.tags.empty());
    }
}

TEST_CASE("the default acceptance configuration seeds out-of-tag pseudo labels") {
    SynthConfig cfg;  // seed 42, 64 images, C=8, F=16, 48x48, noise 0.3
    const auto samples = generate_synthetic(cfg);
    int seeded = 0;
    for (const SyntheticSample& s : samples) {
        if (has_out_of_tag_pseudo(s)) ++seeded;
    }
    CHECK(seeded >= 1);
}

TEST_CASE("relabeled-region fraction approaches the noise rate") {
    SynthConfig cfg;
    cfg.seed = 5150;
    cfg.num_images = 300;
    cfg.height = 16;
    cfg.width = 16;
    cfg.classes = 6;
    cfg.feature_dim = 2;
    cfg.noise_rate = 0.3;

    SynthStats stats;
    generate_synthetic(cfg, &stats);
    REQUIRE(stats.total_regions > 300);
    const double observed =
        static_cast<double>(stats.relabeled_regions) / static_cast<double>(stats.total_regions);
    // 4-sigma binomial band around the configured rate
    const double sigma = std::sqrt(0.3 * 0.7 / static_cast<double>(stats.total_regions));
    CHECK(std::fabs(observed - 0.3) < 4.0 * sigma);
}

TEST_CASE("generation rejects invalid configurations") {
    SynthConfig cfg;
    SUBCASE("scene too small for a rectangle") {
        cfg.height = 4;
        CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
    }
    SUBCASE("noise with a single foreground class") {
        cfg.classes = 1;
        cfg.noise_rate = 0.2;
        CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
    }
    SUBCASE("noise rate of one") {
        cfg.noise_rate = 1.0;
        CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
    }
    SUBCASE("no images") {
        cfg.num_images = 0;
        CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
    }
}

TEST_CASE("dataset directory round-trip") {
    TempDir dir;
    SynthConfig cfg;
    cfg.seed = 99;
    cfg.num_images = 5;
    cfg.height = 10;
    cfg.width = 14;
    cfg.classes = 4;
    cfg.feature_dim = 3;
    cfg.noise_rate = 0.5;

    const auto samples = generate_synthetic(cfg);
    write_dataset(samples, cfg, dir.path());
    const SynthDataset back = load_dataset(dir.path());

    CHECK(back.classes == cfg.classes);
    CHECK(back.feature_dim == cfg.feature_dim);
    REQUIRE(back.samples.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(back.samples[i].gt_mask.values == samples[i].gt_mask.values);
        CHECK(back.samples[i].pseudo_mask.values == samples[i].pseudo_mask.values);
        CHECK(back.samples[i].features.data == samples[i].features.data);
        CHECK(back.samples[i].tags.tags == samples[i].tags.tags);
    }
}
