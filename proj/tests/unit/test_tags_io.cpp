#include <doctest.h>

#include "ocrect/rng.hpp"
#include "ocrect/tags_io.hpp"

#include "../support/test_util.hpp"

using namespace ocrect;
using testutil::TempDir;

TEST_CASE("read_tags parses one object per line in file order") {
    TempDir dir;
    const auto path = dir / "tags.jsonl";
    testutil::write_file(path, "{\"id\":\"a\",\"tags\":[3,7]}\n{\"id\":\"b\",\"tags\":[1]}\n");

    const LabelSpace ls(20);
    const auto tag_sets = read_tags(path, ls);
    REQUIRE(tag_sets.size() == 2);
    CHECK(tag_sets[0].image_id == "a");
    CHECK(tag_sets[0].tags == std::vector<int>{3, 7});
    CHECK(tag_sets[1].image_id == "b");
    CHECK(tag_sets[1].tags == std::vector<int>{1});
}

TEST_CASE("read_tags rejects background and out-of-range tags") {
    TempDir dir;
    const LabelSpace ls(20);

    const auto bg = dir / "bg.jsonl";
    testutil::write_file(bg, "{\"id\":\"b\",\"tags\":[0]}\n");
    CHECK_THROWS_AS(read_tags(bg, ls), ValidationError);

    const auto range = dir / "range.jsonl";
    testutil::write_file(range, "{\"id\":\"c\",\"tags\":[21]}\n");
    CHECK_THROWS_AS(read_tags(range, ls), ValidationError);

    const auto empty = dir / "empty.jsonl";
    testutil::write_file(empty, "{\"id\":\"d\",\"tags\":[]}\n");
    CHECK_THROWS_AS(read_tags(empty, ls), ValidationError);
}

TEST_CASE("read_tags reports the failing line number") {
    TempDir dir;
    const auto path = dir / "bad.jsonl";
    testutil::write_file(path, "{\"id\":\"a\",\"tags\":[1]}\nnot json\n");
    const LabelSpace ls(5);
    try {
        read_tags(path, ls);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("read_tags requires id and integer tags") {
    TempDir dir;
    const LabelSpace ls(5);

    const auto no_id = dir / "no_id.jsonl";
    testutil::write_file(no_id, "{\"tags\":[1]}\n");
    CHECK_THROWS_AS(read_tags(no_id, ls), ValidationError);

    const auto float_tag = dir / "float.jsonl";
    testutil::write_file(float_tag, "{\"id\":\"a\",\"tags\":[1.5]}\n");
    CHECK_THROWS_AS(read_tags(float_tag, ls), ValidationError);
}

TEST_CASE("make_tag_set sorts and deduplicates") {
    const LabelSpace ls(9);
    const TagSet ts = make_tag_set("x", {7, 3, 7, 1}, ls);
    CHECK(ts.tags == std::vector<int>{1, 3, 7});
    CHECK(ts.contains(3));
    CHECK_FALSE(ts.contains(4));
}

TEST_CASE("tags round-trip on randomized corpora") {
    TempDir dir;
    Rng rng(7);
    const LabelSpace ls(12);

    std::vector<TagSet> corpus;
    for (int i = 0; i < 40; ++i) {
        std::vector<int> tags;
        for (int k = 1; k <= 12; ++k) {
            if (rng.bernoulli(0.3)) tags.push_back(k);
        }
        if (tags.empty()) tags.push_back(static_cast<int>(rng.uniform_int(1, 12)));
        corpus.push_back(make_tag_set("img_" + std::to_string(i), std::move(tags), ls));
    }

    const auto path = dir / "rt.jsonl";
    write_tags(corpus, path);
    const auto back = read_tags(path, ls);
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(back[i].image_id == corpus[i].image_id);
        CHECK(back[i].tags == corpus[i].tags);
    }
}
