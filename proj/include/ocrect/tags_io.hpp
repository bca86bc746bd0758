#pragma once

#include <filesystem>
#include <vector>

#include "ocrect/types.hpp"

namespace ocrect {

// JSON-lines tag corpus: one object per line with fields "id" and "tags".
// Malformed lines and out-of-range tags are reported with their line number.
std::vector<TagSet> read_tags(const std::filesystem::path& path, const LabelSpace& ls);

void write_tags(const std::vector<TagSet>& tag_sets, const std::filesystem::path& path);

}  // namespace ocrect
