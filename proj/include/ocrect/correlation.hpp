#pragma once

#include <filesystem>
#include <vector>

#include "ocrect/types.hpp"

namespace ocrect {

// Class co-occurrence frequencies over a tag corpus, extended to index 0 by
// treating background as present in every image. Symmetric, entries in
// [0, 1], diagonal holds per-class frequency, M[0][0] = 1.
struct CorrelationMatrix {
    int num_classes = 0;          // C + 1
    long num_images = 0;          // corpus size it was built from; 0 = unknown
    std::vector<double> values;   // row-major (C+1)^2

    double at(int k, int l) const {
        return values[static_cast<std::size_t>(k) * num_classes + l];
    }
    double& at(int k, int l) {
        return values[static_cast<std::size_t>(k) * num_classes + l];
    }
};

CorrelationMatrix build_correlation(const std::vector<TagSet>& tag_sets, const LabelSpace& ls);

// Per-row min-max normalization onto [0, 1]; constant rows map to zeros.
// Report-only view: the group split always consumes the raw matrix.
std::vector<double> normalize_rows(const CorrelationMatrix& m);

// CSV with a header row of class indices 0..C; values carry 9 significant
// digits. read_correlation cannot recover the corpus size (num_images = 0).
void write_correlation(const CorrelationMatrix& m, const std::filesystem::path& path);
void write_correlation_values(const std::vector<double>& values, int num_classes,
                              const std::filesystem::path& path);
CorrelationMatrix read_correlation(const std::filesystem::path& path);

}  // namespace ocrect
