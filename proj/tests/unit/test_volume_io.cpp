#include <doctest.h>

#include <cstring>
#include <limits>

#include "ocrect/rng.hpp"
#include "ocrect/volume_io.hpp"

#include "../support/test_util.hpp"

using namespace ocrect;
using testutil::TempDir;

TEST_CASE("two-class 1x1 volume round-trips through a 24-byte file") {
    TempDir dir;
    VolumeF v(2, 1, 1);
    v.at(0, 0, 0) = 0.5f;
    v.at(1, 0, 0) = -0.5f;
    write_volume(v, dir / "v.ocrl");

    const std::string raw = testutil::read_file(dir / "v.ocrl");
    CHECK(raw.size() == 24);
    CHECK(raw.substr(0, 4) == "OCRL");

    const VolumeF back = read_volume(dir / "v.ocrl");
    CHECK(back.channels == 2);
    CHECK(back.height == 1);
    CHECK(back.width == 1);
    CHECK(std::memcmp(back.data.data(), v.data.data(), sizeof(float) * 2) == 0);
}

TEST_CASE("volume round-trip preserves every bit on random data") {
    TempDir dir;
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        VolumeF v(static_cast<int>(rng.uniform_int(1, 5)), static_cast<int>(rng.uniform_int(1, 6)),
                  static_cast<int>(rng.uniform_int(1, 6)));
        for (auto& f : v.data) f = static_cast<float>(rng.normal() * 100.0);
        write_volume(v, dir / "rt.ocrl");
        const VolumeF back = read_volume(dir / "rt.ocrl");
        REQUIRE(back.data.size() == v.data.size());
        CHECK(std::memcmp(back.data.data(), v.data.data(), v.data.size() * sizeof(float)) == 0);
    }
}

TEST_CASE("read_volume rejects malformed files") {
    TempDir dir;

    SUBCASE("bad magic") {
        testutil::write_file(dir / "bad.ocrl", std::string("XXRL") + std::string(12, '\0'));
        CHECK_THROWS_AS(read_volume(dir / "bad.ocrl"), ValidationError);
    }
    SUBCASE("size mismatch against header") {
        // header says 3x2x2 = 12 floats but only 10 are present
        VolumeF v(3, 2, 2);
        write_volume(v, dir / "full.ocrl");
        std::string raw = testutil::read_file(dir / "full.ocrl");
        raw.resize(raw.size() - 8);
        testutil::write_file(dir / "short.ocrl", raw);
        CHECK_THROWS_AS(read_volume(dir / "short.ocrl"), ValidationError);
    }
    SUBCASE("non-finite value") {
        VolumeF v(1, 1, 1);
        v.data[0] = 1.0f;
        write_volume(v, dir / "nan.ocrl");
        std::string raw = testutil::read_file(dir / "nan.ocrl");
        const float nan = std::numeric_limits<float>::quiet_NaN();
        std::memcpy(raw.data() + 16, &nan, 4);
        testutil::write_file(dir / "nan.ocrl", raw);
        CHECK_THROWS_AS(read_volume(dir / "nan.ocrl"), ValidationError);
    }
    SUBCASE("zero dimension") {
        std::string raw("OCRL", 4);
        raw += std::string(12, '\0');
        testutil::write_file(dir / "zero.ocrl", raw);
        CHECK_THROWS_AS(read_volume(dir / "zero.ocrl"), ValidationError);
    }
}

TEST_CASE("write_volume refuses non-finite values") {
    TempDir dir;
    VolumeF v(1, 1, 1);
    v.data[0] = std::numeric_limits<float>::infinity();
    CHECK_THROWS_AS(write_volume(v, dir / "inf.ocrl"), ValidationError);
}
