#include "ocrect/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace ocrect {

namespace {

void check_pairs(std::size_t preds, std::size_t others, const char* what) {
    if (preds != others) {
        throw ValidationError(std::string("metrics: ") + std::to_string(preds) +
                              " predictions vs " + std::to_string(others) + " " + what);
    }
}

void check_value(std::uint8_t v, const LabelSpace& ls, const char* what) {
    if (v != kIgnoreLabel && !ls.valid_class(v)) {
        throw ValidationError(std::string("metrics: ") + what + " value " + std::to_string(v) +
                              " outside label space");
    }
}

}  // namespace

EvalReport evaluate(const std::vector<MaskMap>& preds, const std::vector<MaskMap>& gts,
                    const LabelSpace& ls) {
    check_pairs(preds.size(), gts.size(), "ground-truth masks");
    const int n = ls.num_classes();

    EvalReport report;
    report.num_classes = n;
    report.num_images = preds.size();
    report.confusion.assign(static_cast<std::size_t>(n) * n, 0);

    for (std::size_t i = 0; i < preds.size(); ++i) {
        const MaskMap& pred = preds[i];
        const MaskMap& gt = gts[i];
        if (!pred.same_shape(gt)) {
            throw ValidationError("metrics: shape mismatch at image " + std::to_string(i));
        }
        for (std::size_t px = 0; px < gt.values.size(); ++px) {
            const std::uint8_t g = gt.values[px];
            const std::uint8_t p = pred.values[px];
            check_value(g, ls, "ground-truth");
            check_value(p, ls, "prediction");
            if (g == kIgnoreLabel || p == kIgnoreLabel) continue;
            ++report.confusion[static_cast<std::size_t>(g) * n + p];
        }
    }

    // IoU_c = TP / (TP + FP + FN), aggregated over the whole set.
    report.per_class_iou.assign(n, std::numeric_limits<double>::quiet_NaN());
    double iou_sum = 0.0;
    int defined = 0;
    for (int c = 0; c < n; ++c) {
        std::uint64_t tp = report.confusion[static_cast<std::size_t>(c) * n + c];
        std::uint64_t row = 0, col = 0;
        for (int k = 0; k < n; ++k) {
            row += report.confusion[static_cast<std::size_t>(c) * n + k];
            col += report.confusion[static_cast<std::size_t>(k) * n + c];
        }
        const std::uint64_t denom = row + col - tp;  // TP + FP + FN
        if (denom == 0) continue;                    // absent everywhere: undefined
        report.per_class_iou[c] = static_cast<double>(tp) / static_cast<double>(denom);
        iou_sum += report.per_class_iou[c];
        ++defined;
    }
    report.miou = defined ? iou_sum / defined : 0.0;
    return report;
}

OcErrorStats oc_error_stats(const std::vector<MaskMap>& preds,
                            const std::vector<TagSet>& tag_sets, const LabelSpace& ls) {
    check_pairs(preds.size(), tag_sets.size(), "tag sets");

    std::uint64_t bad_images = 0, oc_pixels = 0, total_pixels = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        bool image_bad = false;
        for (std::uint8_t v : preds[i].values) {
            check_value(v, ls, "prediction");
            if (v == kIgnoreLabel) continue;
            ++total_pixels;
            if (v != 0 && !tag_sets[i].contains(v)) {
                ++oc_pixels;
                image_bad = true;
            }
        }
        if (image_bad) ++bad_images;
    }

    OcErrorStats stats;
    if (!preds.empty()) {
        stats.image_error_rate = static_cast<double>(bad_images) / static_cast<double>(preds.size());
    }
    if (total_pixels > 0) {
        stats.pixel_fraction = static_cast<double>(oc_pixels) / static_cast<double>(total_pixels);
    }
    return stats;
}

EvalReport full_evaluate(const std::vector<MaskMap>& preds, const std::vector<MaskMap>& gts,
                         const std::vector<TagSet>& tag_sets, const LabelSpace& ls) {
    EvalReport report = evaluate(preds, gts, ls);
    const OcErrorStats oc = oc_error_stats(preds, tag_sets, ls);
    report.oc_image_error_rate = oc.image_error_rate;
    report.oc_pixel_fraction = oc.pixel_fraction;
    return report;
}

AuditReport audit_predictions(const std::vector<MaskMap>& preds,
                              const std::vector<TagSet>& tag_sets, const LabelSpace& ls) {
    check_pairs(preds.size(), tag_sets.size(), "tag sets");

    AuditReport report;
    report.total_images = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        std::map<int, std::uint64_t> counts;
        for (std::uint8_t v : preds[i].values) {
            check_value(v, ls, "prediction");
            if (v == kIgnoreLabel) continue;
            ++report.total_pixels;
            if (v != 0 && !tag_sets[i].contains(v)) ++counts[v];
        }
        if (counts.empty()) continue;

        AuditFinding finding;
        finding.image_id = tag_sets[i].image_id;
        for (const auto& [cls, cnt] : counts) {
            finding.class_counts.emplace_back(cls, cnt);
            finding.oc_pixels += cnt;
        }
        report.total_oc_pixels += finding.oc_pixels;
        ++report.images_with_errors;
        report.findings.push_back(std::move(finding));
    }
    return report;
}

}  // namespace ocrect
