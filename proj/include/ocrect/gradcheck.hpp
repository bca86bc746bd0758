#pragma once

#include <cstdint>

namespace ocrect {

struct GradCheckConfig {
    int trials = 200;        // random pixels for the rectification loss
    int max_classes = 10;
    std::uint64_t seed = 1234;
    double fd_step = 1e-5;
    double tolerance = 1e-4;
    // Self-test hook: added to one analytic gradient component so a broken
    // gradient path is seen to fail.
    double perturbation = 0.0;
};

struct GradCheckReport {
    double max_rel_err_rect = 0.0;
    double max_rel_err_seg = 0.0;
    double max_rel_err_combined = 0.0;
    int rect_trials = 0;
    int seg_trials = 0;
    int combined_trials = 0;
    int skipped_coords = 0;  // coordinates straddling a discrete split boundary

    bool pass(double tolerance) const {
        return max_rel_err_rect <= tolerance && max_rel_err_seg <= tolerance &&
               max_rel_err_combined <= tolerance;
    }
};

// Central finite-difference validation of the analytic gradients of the
// rectification, segmentation, and combined losses on random instances.
GradCheckReport run_gradcheck(const GradCheckConfig& cfg);

}  // namespace ocrect
