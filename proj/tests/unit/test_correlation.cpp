#include <doctest.h>

#include <cmath>

#include "ocrect/correlation.hpp"
#include "ocrect/rng.hpp"
#include "ocrect/tags_io.hpp"

#include "../support/oracles.hpp"
#include "../support/test_util.hpp"

using namespace ocrect;
using testutil::TempDir;

namespace {

std::vector<TagSet> corpus_from(const std::vector<std::vector<int>>& lists, const LabelSpace& ls) {
    std::vector<TagSet> out;
    for (std::size_t i = 0; i < lists.size(); ++i) {
        out.push_back(make_tag_set("img_" + std::to_string(i), lists[i], ls));
    }
    return out;
}

}  // namespace

TEST_CASE("build_correlation counts co-occurrence frequencies") {
    const LabelSpace ls(3);
    const auto corpus = corpus_from({{1, 2}, {1}, {2, 3}, {1, 2}}, ls);
    const CorrelationMatrix m = build_correlation(corpus, ls);

    CHECK(m.num_images == 4);
    CHECK(m.at(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.at(1, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.at(2, 3) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.at(1, 3) == 0.0);
    // background behaves as present everywhere
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(0, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.at(0, 3) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("single-image corpus") {
    const LabelSpace ls(6);
    const CorrelationMatrix m = build_correlation(corpus_from({{5}}, ls), ls);
    CHECK(m.at(5, 5) == 1.0);
    CHECK(m.at(0, 5) == 1.0);
    for (int k = 1; k <= 6; ++k) {
        if (k == 5) continue;
        CHECK(m.at(k, k) == 0.0);
        CHECK(m.at(k, 5) == 0.0);
    }
}

TEST_CASE("build_correlation rejects an empty corpus") {
    const LabelSpace ls(3);
    CHECK_THROWS_AS(build_correlation({}, ls), ValidationError);
}

TEST_CASE("build_correlation matches the double-loop oracle on random corpora") {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int classes = static_cast<int>(rng.uniform_int(2, 8));
        const LabelSpace ls(classes);
        const int images = static_cast<int>(rng.uniform_int(1, 50));

        std::vector<std::vector<int>> lists;
        for (int i = 0; i < images; ++i) {
            std::vector<int> tags;
            for (int k = 1; k <= classes; ++k) {
                if (rng.bernoulli(0.4)) tags.push_back(k);
            }
            if (tags.empty()) tags.push_back(static_cast<int>(rng.uniform_int(1, classes)));
            lists.push_back(std::move(tags));
        }

        const CorrelationMatrix m = build_correlation(corpus_from(lists, ls), ls);
        const auto expected = oracle::build_corr(lists, classes);
        for (int k = 0; k <= classes; ++k) {
            for (int l = 0; l <= classes; ++l) {
                CHECK(m.at(k, l) == doctest::Approx(expected[k][l]).epsilon(1e-12));
                CHECK(m.at(k, l) == m.at(l, k));
                CHECK(m.at(k, l) >= 0.0);
                CHECK(m.at(k, l) <= 1.0);
            }
        }
    }
}

TEST_CASE("permutation and duplication invariance") {
    const LabelSpace ls(4);
    const std::vector<std::vector<int>> lists = {{1, 2}, {3}, {2, 4}, {1, 3, 4}, {2}};
    const CorrelationMatrix base = build_correlation(corpus_from(lists, ls), ls);

    std::vector<std::vector<int>> permuted = {{2, 4}, {1, 3, 4}, {1, 2}, {2}, {3}};
    const CorrelationMatrix perm = build_correlation(corpus_from(permuted, ls), ls);
    CHECK(perm.values == base.values);

    std::vector<std::vector<int>> doubled = lists;
    doubled.insert(doubled.end(), lists.begin(), lists.end());
    const CorrelationMatrix dup = build_correlation(corpus_from(doubled, ls), ls);
    CHECK(dup.num_images == 2 * base.num_images);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
        CHECK(dup.values[i] == doctest::Approx(base.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("normalize_rows min-max normalizes each row") {
    CorrelationMatrix m;
    m.num_classes = 3;
    m.num_images = 1;
    m.values = {0.2, 0.6, 1.0,
                0.3, 0.3, 0.3,
                0.0, 0.5, 1.0};
    const auto norm = normalize_rows(m);
    CHECK(norm[0] == doctest::Approx(0.0));
    CHECK(norm[1] == doctest::Approx(0.5));
    CHECK(norm[2] == doctest::Approx(1.0));
    // constant row maps to zeros
    CHECK(norm[3] == 0.0);
    CHECK(norm[4] == 0.0);
    CHECK(norm[5] == 0.0);
    CHECK(norm[6] == doctest::Approx(0.0));
    CHECK(norm[7] == doctest::Approx(0.5));
    CHECK(norm[8] == doctest::Approx(1.0));
}

TEST_CASE("normalized background row zeroes out under equal class frequencies") {
    // every class appears in exactly two of four images, so the raw bg row is
    // [1, .5, .5, .5, .5] and normalizes to [1, 0, 0, 0, 0]
    const LabelSpace ls(4);
    const auto corpus = corpus_from({{1, 2}, {2, 3}, {3, 4}, {4, 1}}, ls);
    const CorrelationMatrix m = build_correlation(corpus, ls);
    const auto norm = normalize_rows(m);
    CHECK(norm[0] == doctest::Approx(1.0));
    for (int l = 1; l <= 4; ++l) {
        CHECK(norm[l] == doctest::Approx(0.0));
    }
}

TEST_CASE("correlation CSV round-trips to 9 significant digits") {
    TempDir dir;
    const LabelSpace ls(5);
    Rng rng(17);
    std::vector<std::vector<int>> lists;
    for (int i = 0; i < 23; ++i) {
        std::vector<int> tags;
        for (int k = 1; k <= 5; ++k) {
            if (rng.bernoulli(0.5)) tags.push_back(k);
        }
        if (tags.empty()) tags.push_back(1);
        lists.push_back(std::move(tags));
    }
    const CorrelationMatrix m = build_correlation(corpus_from(lists, ls), ls);
    write_correlation(m, dir / "m.csv");
    const CorrelationMatrix back = read_correlation(dir / "m.csv");

    REQUIRE(back.num_classes == m.num_classes);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        const double rel = m.values[i] == 0.0
                               ? std::fabs(back.values[i])
                               : std::fabs(back.values[i] - m.values[i]) / std::fabs(m.values[i]);
        CHECK(rel < 1e-8);
    }
    // symmetric after read
    for (int k = 0; k < back.num_classes; ++k) {
        for (int l = 0; l < back.num_classes; ++l) {
            CHECK(back.at(k, l) == back.at(l, k));
        }
    }
}

TEST_CASE("read_correlation rejects malformed CSV") {
    TempDir dir;

    SUBCASE("ragged row") {
        testutil::write_file(dir / "ragged.csv", "0,1\n0.5,0.5\n0.5\n");
        CHECK_THROWS_AS(read_correlation(dir / "ragged.csv"), ValidationError);
    }
    SUBCASE("non-numeric cell") {
        testutil::write_file(dir / "alpha.csv", "0,1\n0.5,x\n0.5,0.5\n");
        CHECK_THROWS_AS(read_correlation(dir / "alpha.csv"), ValidationError);
    }
    SUBCASE("header mismatch") {
        testutil::write_file(dir / "head.csv", "0,2\n0.5,0.5\n0.5,0.5\n");
        CHECK_THROWS_AS(read_correlation(dir / "head.csv"), ValidationError);
    }
    SUBCASE("missing rows") {
        testutil::write_file(dir / "rows.csv", "0,1\n0.5,0.5\n");
        CHECK_THROWS_AS(read_correlation(dir / "rows.csv"), ValidationError);
    }
    SUBCASE("value outside [0,1]") {
        testutil::write_file(dir / "range.csv", "0,1\n0.5,1.5\n0.5,0.5\n");
        CHECK_THROWS_AS(read_correlation(dir / "range.csv"), ValidationError);
    }
}
