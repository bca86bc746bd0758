#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocrect/model.hpp"
#include "ocrect/rectification.hpp"
#include "ocrect/synthetic.hpp"
#include "ocrect/types.hpp"

namespace ocrect {

struct TrainConfig {
    int epochs = 30;
    int batch_size = 4;
    double learning_rate = 0.32;
    double momentum = 0.9;
    double weight_decay = 5e-4;
    double lr_decay_gamma = 0.95;  // per-epoch exponential decay
    std::uint64_t seed = 0;
    int train_count = 0;  // first N samples train, rest held out; 0 = two thirds
    bool ocr_enabled = true;
    int ocr_warmup_epochs = 0;  // epochs trained on the segmentation loss alone
    // 0 = return the raw final iterate; K > 0 = return the average of the
    // last K end-of-epoch states (tail-averaged SGD)
    int average_tail_epochs = 0;
    OcrConfig ocr;
};

// One record per epoch; epoch 0 is the pre-update evaluation.
struct EpochRecord {
    int epoch = 0;
    double learning_rate = 0.0;
    double l_seg = 0.0;
    double l_rec = 0.0;
    double l_total = 0.0;
    double eval_miou = 0.0;
    double eval_oc_image_error_rate = 0.0;
    double eval_oc_pixel_fraction = 0.0;
};

// Raised when a loss turns non-finite; carries the failing location.
struct TrainAbortError : std::runtime_error {
    int epoch;
    int batch;
    TrainAbortError(int epoch_, int batch_, const std::string& what_)
        : std::runtime_error(what_), epoch(epoch_), batch(batch_) {}
};

struct TrainResult {
    LinearPixelModel model;
    std::vector<EpochRecord> log;
};

// SGD with momentum and weight decay on the combined objective:
//   v <- mu*v - lr*(grad + wd*w),  w <- w + v
// Deterministic for a fixed config: fixed shuffling, fixed reduction order.
// The correlation matrix is built from tag_corpus before the first update.
TrainResult train_model(const std::vector<SyntheticSample>& train_set,
                        const std::vector<SyntheticSample>& eval_set,
                        const std::vector<TagSet>& tag_corpus, const LabelSpace& ls,
                        const TrainConfig& cfg);

std::string epoch_record_json(const EpochRecord& rec);

}  // namespace ocrect
