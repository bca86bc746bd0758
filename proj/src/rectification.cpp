#include "ocrect/rectification.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ocrect/numeric.hpp"

namespace ocrect {

bool oc_mask(std::span<const double> logits, const TagSet& tags) {
    const int top = argmax(logits);
    return top != 0 && !tags.contains(top);
}

int anchor_class(std::span<const double> logits, const TagSet& tags) {
    int best = 0;  // background is always a candidate
    for (int k : tags.tags) {
        if (logits[k] > logits[best]) best = k;
    }
    return best;
}

GroupSplit split_groups(std::span<const double> logits, const TagSet& tags,
                        const CorrelationMatrix& corr, const OcrConfig& cfg) {
    const int num_classes = static_cast<int>(logits.size());
    if (corr.num_classes != num_classes) {
        throw std::invalid_argument("split_groups: correlation matrix covers " +
                                    std::to_string(corr.num_classes) + " classes, logits have " +
                                    std::to_string(num_classes));
    }

    GroupSplit split;
    split.anchor = anchor_class(logits, tags);

    for (int k = 1; k < num_classes; ++k) {
        if (!tags.contains(k)) split.oc.push_back(k);
    }

    switch (cfg.split) {
        case SplitStrategy::kAll:
            split.ic.push_back(0);
            split.ic.insert(split.ic.end(), tags.tags.begin(), tags.tags.end());
            break;
        case SplitStrategy::kMax:
            split.ic.push_back(split.anchor);
            break;
        case SplitStrategy::kAda: {
            // Keep candidates whose modulated posterior stays close to the
            // anchor's: P_anchor - P_k * M[anchor][k] < t. The anchor itself
            // is always kept.
            const std::vector<double> p = softmax(logits);
            const double p_anchor = p[split.anchor];
            auto keep = [&](int k) {
                if (k == split.anchor) return true;
                return p_anchor - p[k] * corr.at(split.anchor, k) < cfg.t;
            };
            if (keep(0)) split.ic.push_back(0);
            for (int k : tags.tags) {
                if (keep(k)) split.ic.push_back(k);
            }
            break;
        }
    }
    return split;
}

PixelLossResult rect_loss_pixel(std::span<const double> logits, const GroupSplit& split,
                                double delta) {
    if (split.ic.empty()) {
        throw std::invalid_argument("rect_loss_pixel: empty in-candidate group");
    }
    PixelLossResult result;
    result.grad.assign(logits.size(), 0.0);
    if (split.oc.empty()) {
        return result;  // no ranking constraint exists
    }

    // a = LSE over ic of -z_k, b = delta + LSE over oc of z_l.
    // Loss = softplus(a + b); never forms e^a * e^b directly.
    std::vector<double> neg_ic(split.ic.size());
    for (std::size_t i = 0; i < split.ic.size(); ++i) neg_ic[i] = -logits[split.ic[i]];
    std::vector<double> oc_vals(split.oc.size());
    for (std::size_t i = 0; i < split.oc.size(); ++i) oc_vals[i] = logits[split.oc[i]];

    const double a = log_sum_exp(neg_ic);
    const double b = delta + log_sum_exp(oc_vals);
    result.value = softplus(a + b);

    const double sig = sigmoid(a + b);
    for (int k : split.ic) {
        result.grad[k] = -sig * std::exp(-logits[k] - a);
    }
    for (int l : split.oc) {
        result.grad[l] = sig * std::exp(logits[l] + delta - b);
    }
    return result;
}

MapLossResult rect_loss_map(const VolumeD& logits, const MaskMap& pseudo, const TagSet& tags,
                            const CorrelationMatrix& corr, const OcrConfig& cfg) {
    if (logits.height != pseudo.height || logits.width != pseudo.width) {
        throw ValidationError("rect_loss_map: logits " + std::to_string(logits.height) + "x" +
                              std::to_string(logits.width) + " vs mask " +
                              std::to_string(pseudo.height) + "x" + std::to_string(pseudo.width));
    }
    const int num_classes = logits.channels;
    const int height = logits.height;
    const int width = logits.width;

    MapLossResult result;
    result.grad = VolumeD(num_classes, height, width);
    if (cfg.pixel_select == PixelSelect::kNone) {
        return result;
    }

    std::vector<double> pix(num_classes);
    double sum = 0.0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (pseudo.at(y, x) == kIgnoreLabel) continue;
            for (int k = 0; k < num_classes; ++k) pix[k] = logits.at(k, y, x);

            const bool is_oc = oc_mask(pix, tags);
            const bool selected = cfg.pixel_select == PixelSelect::kAll ||
                                  (cfg.pixel_select == PixelSelect::kOcOnly && is_oc) ||
                                  (cfg.pixel_select == PixelSelect::kIcOnly && !is_oc);
            if (!selected) continue;

            const GroupSplit split = split_groups(pix, tags, corr, cfg);
            const PixelLossResult r = rect_loss_pixel(pix, split, cfg.delta);
            sum += r.value;
            for (int k = 0; k < num_classes; ++k) {
                if (r.grad[k] != 0.0) result.grad.at(k, y, x) = r.grad[k];
            }
        }
    }

    // Mean over all H*W pixels; unselected and ignored pixels contribute 0.
    const double denom = static_cast<double>(height) * static_cast<double>(width);
    result.value = sum / denom;
    for (double& g : result.grad.data) g /= denom;
    return result;
}

}  // namespace ocrect
