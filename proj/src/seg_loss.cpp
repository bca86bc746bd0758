#include "ocrect/seg_loss.hpp"

#include <cmath>
#include <string>

#include "ocrect/numeric.hpp"

namespace ocrect {

MapLossResult seg_ce_loss(const VolumeD& logits, const MaskMap& pseudo) {
    if (logits.height != pseudo.height || logits.width != pseudo.width) {
        throw ValidationError("seg_ce_loss: logits " + std::to_string(logits.height) + "x" +
                              std::to_string(logits.width) + " vs mask " +
                              std::to_string(pseudo.height) + "x" + std::to_string(pseudo.width));
    }
    const int num_classes = logits.channels;
    const int height = logits.height;
    const int width = logits.width;

    MapLossResult result;
    result.grad = VolumeD(num_classes, height, width);

    long contributing = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (pseudo.at(y, x) != kIgnoreLabel) ++contributing;
        }
    }
    if (contributing == 0) {
        return result;
    }
    const double inv_n = 1.0 / static_cast<double>(contributing);

    std::vector<double> pix(num_classes);
    double sum = 0.0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::uint8_t label = pseudo.at(y, x);
            if (label == kIgnoreLabel) continue;
            if (label >= num_classes) {
                throw ValidationError("seg_ce_loss: label " + std::to_string(label) +
                                      " outside " + std::to_string(num_classes) + " classes");
            }
            for (int k = 0; k < num_classes; ++k) pix[k] = logits.at(k, y, x);

            // CE = LSE(z) - z_label; grad = (softmax - onehot)/N.
            sum += log_sum_exp(pix) - pix[label];
            const std::vector<double> p = softmax(pix);
            for (int k = 0; k < num_classes; ++k) {
                result.grad.at(k, y, x) = (p[k] - (k == label ? 1.0 : 0.0)) * inv_n;
            }
        }
    }
    result.value = sum * inv_n;
    return result;
}

MapLossResult combined_loss(const VolumeD& logits, const MaskMap& pseudo, const TagSet& tags,
                            const CorrelationMatrix& corr, const OcrConfig& cfg) {
    MapLossResult seg = seg_ce_loss(logits, pseudo);
    const MapLossResult rec = rect_loss_map(logits, pseudo, tags, corr, cfg);
    seg.value += cfg.alpha * rec.value;
    for (std::size_t i = 0; i < seg.grad.data.size(); ++i) {
        seg.grad.data[i] += cfg.alpha * rec.grad.data[i];
    }
    return seg;
}

}  // namespace ocrect
