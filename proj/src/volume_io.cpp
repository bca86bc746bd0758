#include "ocrect/volume_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace ocrect {

namespace {

constexpr char kMagic[4] = {'O', 'C', 'R', 'L'};
constexpr std::size_t kMaxElements = std::size_t{1} << 28;

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

VolumeF read_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open volume file: " + path.string());
    }
    std::string buf(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    if (buf.size() < 16 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw ValidationError(path.string() + ": missing OCRL magic");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    const std::uint32_t channels = get_u32le(p + 4);
    const std::uint32_t height = get_u32le(p + 8);
    const std::uint32_t width = get_u32le(p + 12);
    if (channels == 0 || height == 0 || width == 0) {
        throw ValidationError(path.string() + ": zero dimension in header");
    }
    const std::size_t count =
        static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) * width;
    if (count > kMaxElements) {
        throw ValidationError(path.string() + ": header dimensions too large");
    }
    if (buf.size() != 16 + count * 4) {
        throw ValidationError(path.string() + ": payload is " + std::to_string(buf.size() - 16) +
                              " bytes, header implies " + std::to_string(count * 4));
    }

    VolumeF vol(static_cast<int>(channels), static_cast<int>(height), static_cast<int>(width));
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t bits = get_u32le(p + 16 + i * 4);
        const float v = std::bit_cast<float>(bits);
        if (!std::isfinite(v)) {
            throw ValidationError(path.string() + ": non-finite value at element " +
                                  std::to_string(i));
        }
        vol.data[i] = v;
    }
    return vol;
}

void write_volume(const VolumeF& volume, const std::filesystem::path& path) {
    if (volume.channels < 1 || volume.height < 1 || volume.width < 1 ||
        volume.data.size() != static_cast<std::size_t>(volume.channels) * volume.height *
                                  volume.width) {
        throw ValidationError("write_volume: inconsistent shape");
    }
    std::string buf;
    buf.reserve(16 + volume.data.size() * 4);
    buf.append(kMagic, 4);
    put_u32le(buf, static_cast<std::uint32_t>(volume.channels));
    put_u32le(buf, static_cast<std::uint32_t>(volume.height));
    put_u32le(buf, static_cast<std::uint32_t>(volume.width));
    for (float v : volume.data) {
        if (!std::isfinite(v)) {
            throw ValidationError("write_volume: non-finite value");
        }
        put_u32le(buf, std::bit_cast<std::uint32_t>(v));
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open volume file for writing: " + path.string());
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

}  // namespace ocrect
