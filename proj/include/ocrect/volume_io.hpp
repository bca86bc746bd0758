#pragma once

#include <filesystem>

#include "ocrect/types.hpp"

namespace ocrect {

// "OCRL" binary volume: magic, three u32 little-endian dims (channels,
// height, width), then channels*height*width f32 little-endian values,
// channel-major then row-major. Round-trips are bit exact; non-finite
// values are rejected in both directions.
VolumeF read_volume(const std::filesystem::path& path);

void write_volume(const VolumeF& volume, const std::filesystem::path& path);

}  // namespace ocrect
