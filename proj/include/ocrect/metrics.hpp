#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocrect/types.hpp"

namespace ocrect {

// Dataset-aggregated evaluation: IoU counts are summed over all images
// before dividing. Classes with no support in either prediction or ground
// truth are undefined (NaN) and excluded from the mean.
struct EvalReport {
    int num_classes = 0;                 // C + 1
    std::uint64_t num_images = 0;
    std::vector<double> per_class_iou;   // NaN = undefined
    double miou = 0.0;
    double oc_image_error_rate = 0.0;
    double oc_pixel_fraction = 0.0;
    std::vector<std::uint64_t> confusion;  // (C+1)^2, row = ground truth
};

// mIoU + confusion only (no tag information needed).
EvalReport evaluate(const std::vector<MaskMap>& preds, const std::vector<MaskMap>& gts,
                    const LabelSpace& ls);

// Fraction of images containing at least one out-of-candidate pixel, and
// the companion micro statistic over all non-ignore predicted pixels.
struct OcErrorStats {
    double image_error_rate = 0.0;
    double pixel_fraction = 0.0;
};
OcErrorStats oc_error_stats(const std::vector<MaskMap>& preds,
                            const std::vector<TagSet>& tag_sets, const LabelSpace& ls);

// Everything at once; tag_sets must pair with preds.
EvalReport full_evaluate(const std::vector<MaskMap>& preds, const std::vector<MaskMap>& gts,
                         const std::vector<TagSet>& tag_sets, const LabelSpace& ls);

// Per-image out-of-candidate audit of saved predictions.
struct AuditFinding {
    std::string image_id;
    std::uint64_t oc_pixels = 0;
    std::vector<std::pair<int, std::uint64_t>> class_counts;  // offending class -> pixels
};

struct AuditReport {
    std::vector<AuditFinding> findings;  // images with at least one OC pixel
    std::uint64_t total_images = 0;
    std::uint64_t images_with_errors = 0;
    std::uint64_t total_oc_pixels = 0;
    std::uint64_t total_pixels = 0;  // non-ignore predicted pixels
};

AuditReport audit_predictions(const std::vector<MaskMap>& preds,
                              const std::vector<TagSet>& tag_sets, const LabelSpace& ls);

}  // namespace ocrect
