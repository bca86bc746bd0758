#pragma once

#include "ocrect/rectification.hpp"
#include "ocrect/types.hpp"

namespace ocrect {

// Pixelwise softmax cross-entropy against pseudo labels, averaged over
// non-ignore pixels. Gradient is (softmax - onehot)/N on contributing
// pixels and zero elsewhere. All pixels ignored yields loss 0.
MapLossResult seg_ce_loss(const VolumeD& logits, const MaskMap& pseudo);

// Combined objective: seg_ce_loss + alpha * rect_loss_map.
MapLossResult combined_loss(const VolumeD& logits, const MaskMap& pseudo, const TagSet& tags,
                            const CorrelationMatrix& corr, const OcrConfig& cfg);

}  // namespace ocrect
