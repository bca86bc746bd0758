#pragma once

#include <filesystem>
#include <vector>

#include "ocrect/types.hpp"

namespace ocrect {

// Per-pixel linear classifier: logits(x) = W x + b, shared across pixels.
struct LinearPixelModel {
    int num_classes = 0;    // C + 1
    int num_features = 0;
    std::vector<double> weights;  // (C+1) x F, row-major
    std::vector<double> bias;     // C + 1

    LinearPixelModel() = default;
    LinearPixelModel(int classes, int features)
        : num_classes(classes), num_features(features),
          weights(static_cast<std::size_t>(classes) * features, 0.0),
          bias(classes, 0.0) {}

    double weight(int k, int f) const {
        return weights[static_cast<std::size_t>(k) * num_features + f];
    }
    double& weight(int k, int f) {
        return weights[static_cast<std::size_t>(k) * num_features + f];
    }

    VolumeD forward(const VolumeF& features) const;
};

// Argmax decode (ties to the lowest class index).
MaskMap predict_mask(const LinearPixelModel& model, const VolumeF& features);

// "OCRM" binary: magic, u32 num_classes, u32 num_features, then f32
// weights (row-major) followed by f32 bias, all little-endian.
void save_model(const LinearPixelModel& model, const std::filesystem::path& path);
LinearPixelModel load_model(const std::filesystem::path& path);

}  // namespace ocrect
