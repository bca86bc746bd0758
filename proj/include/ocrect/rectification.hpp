#pragma once

#include <span>
#include <vector>

#include "ocrect/correlation.hpp"
#include "ocrect/types.hpp"

namespace ocrect {

enum class SplitStrategy { kAll, kMax, kAda };
enum class PixelSelect { kNone, kIcOnly, kOcOnly, kAll };

struct OcrConfig {
    double alpha = 1.0;   // rectification weight in the combined objective
    double delta = 2.0;   // ranking margin
    double t = 0.2;       // adaptive IC filter threshold
    SplitStrategy split = SplitStrategy::kAda;
    PixelSelect pixel_select = PixelSelect::kOcOnly;
};

// Per-pixel class grouping. oc is always the complement of the candidate
// set; ic is a subset of tags+background chosen by the split strategy and
// always contains the anchor.
struct GroupSplit {
    std::vector<int> ic;
    std::vector<int> oc;
    int anchor = 0;
};

struct PixelLossResult {
    double value = 0.0;
    std::vector<double> grad;  // length C+1; zero outside ic and oc
};

struct MapLossResult {
    double value = 0.0;
    VolumeD grad;
};

// True iff the unrestricted argmax class is a foreground class absent from
// the tag set. Background never triggers it; ties break to the lowest index.
bool oc_mask(std::span<const double> logits, const TagSet& tags);

// Highest-scoring class among tags+background (ties to the lowest index).
int anchor_class(std::span<const double> logits, const TagSet& tags);

GroupSplit split_groups(std::span<const double> logits, const TagSet& tags,
                        const CorrelationMatrix& corr, const OcrConfig& cfg);

// Smooth group-ranking penalty for one pixel:
//   log(1 + sum_{k in ic} e^{-z_k} * sum_{l in oc} e^{z_l + delta})
// evaluated in log space, with the analytic gradient. Empty oc means no
// ranking constraint exists: value 0, zero gradient.
PixelLossResult rect_loss_pixel(std::span<const double> logits, const GroupSplit& split,
                                double delta);

// Per-pixel rectification loss masked by the pixel-selection strategy and
// averaged over all H*W pixels. Ignore-label pixels contribute zero but
// still count in the denominator.
MapLossResult rect_loss_map(const VolumeD& logits, const MaskMap& pseudo, const TagSet& tags,
                            const CorrelationMatrix& corr, const OcrConfig& cfg);

}  // namespace ocrect
