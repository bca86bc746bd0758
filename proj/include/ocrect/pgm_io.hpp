#pragma once

#include <filesystem>

#include "ocrect/types.hpp"

namespace ocrect {

// Masks travel as binary PGM (P5), maxval 255. Pixel value = class index;
// 255 is the ignore label. Values in (C, 255) are rejected on read.
MaskMap read_mask(const std::filesystem::path& path, const LabelSpace& ls);

void write_mask(const MaskMap& mask, const std::filesystem::path& path);

}  // namespace ocrect
