#include "ocrect/train.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "ocrect/correlation.hpp"
#include "ocrect/metrics.hpp"
#include "ocrect/rng.hpp"
#include "ocrect/seg_loss.hpp"

namespace ocrect {

namespace {

struct LossPair {
    double seg = 0.0;
    double rec = 0.0;
};

// Mean per-image losses over a sample set with fixed parameters.
LossPair dataset_losses(const LinearPixelModel& model, const std::vector<SyntheticSample>& set,
                        const CorrelationMatrix& corr, const OcrConfig& cfg) {
    LossPair sums;
    for (const SyntheticSample& s : set) {
        const VolumeD logits = model.forward(s.features);
        sums.seg += seg_ce_loss(logits, s.pseudo_mask).value;
        sums.rec += rect_loss_map(logits, s.pseudo_mask, s.tags, corr, cfg).value;
    }
    const double n = static_cast<double>(set.size());
    if (n > 0) {
        sums.seg /= n;
        sums.rec /= n;
    }
    return sums;
}

EpochRecord make_record(int epoch, double lr, const LinearPixelModel& model,
                        const std::vector<SyntheticSample>& train_set,
                        const std::vector<SyntheticSample>& eval_set,
                        const CorrelationMatrix& corr, const OcrConfig& cfg,
                        const LabelSpace& ls) {
    EpochRecord rec;
    rec.epoch = epoch;
    rec.learning_rate = lr;

    const LossPair losses = dataset_losses(model, train_set, corr, cfg);
    rec.l_seg = losses.seg;
    rec.l_rec = losses.rec;
    rec.l_total = losses.seg + cfg.alpha * losses.rec;

    if (!eval_set.empty()) {
        std::vector<MaskMap> preds, gts;
        std::vector<TagSet> tags;
        preds.reserve(eval_set.size());
        for (const SyntheticSample& s : eval_set) {
            preds.push_back(predict_mask(model, s.features));
            gts.push_back(s.gt_mask);
            tags.push_back(s.tags);
        }
        const EvalReport report = full_evaluate(preds, gts, tags, ls);
        rec.eval_miou = report.miou;
        rec.eval_oc_image_error_rate = report.oc_image_error_rate;
        rec.eval_oc_pixel_fraction = report.oc_pixel_fraction;
    }
    return rec;
}

}  // namespace

TrainResult train_model(const std::vector<SyntheticSample>& train_set,
                        const std::vector<SyntheticSample>& eval_set,
                        const std::vector<TagSet>& tag_corpus, const LabelSpace& ls,
                        const TrainConfig& cfg) {
    if (train_set.empty()) {
        throw ValidationError("train_model: empty training set");
    }
    if (cfg.epochs < 0 || cfg.batch_size < 1) {
        throw ValidationError("train_model: epochs must be >= 0 and batch_size >= 1");
    }
    const int num_classes = ls.num_classes();
    const int num_features = train_set.front().features.channels;

    const CorrelationMatrix corr = build_correlation(tag_corpus, ls);

    OcrConfig loss_cfg = cfg.ocr;
    if (!cfg.ocr_enabled) loss_cfg.pixel_select = PixelSelect::kNone;
    OcrConfig warmup_cfg = loss_cfg;
    warmup_cfg.pixel_select = PixelSelect::kNone;

    Rng rng(cfg.seed);
    LinearPixelModel model(num_classes, num_features);
    for (double& w : model.weights) w = rng.normal() * 0.01;
    // bias starts at zero

    TrainResult result;
    result.log.push_back(make_record(0, cfg.learning_rate, model, train_set, eval_set, corr,
                                     cfg.ocr_warmup_epochs > 0 ? warmup_cfg : loss_cfg, ls));

    std::vector<double> vel_w(model.weights.size(), 0.0);
    std::vector<double> vel_b(model.bias.size(), 0.0);
    std::vector<double> grad_w(model.weights.size());
    std::vector<double> grad_b(model.bias.size());

    std::vector<int> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    const int tail = std::min(std::max(cfg.average_tail_epochs, 0), cfg.epochs);
    std::vector<double> avg_w, avg_b;
    if (tail > 0) {
        avg_w.assign(model.weights.size(), 0.0);
        avg_b.assign(model.bias.size(), 0.0);
    }

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const double lr = cfg.learning_rate * std::pow(cfg.lr_decay_gamma, epoch - 1);
        const OcrConfig& epoch_cfg = epoch <= cfg.ocr_warmup_epochs ? warmup_cfg : loss_cfg;
        rng.shuffle(order);

        const int num_batches =
            (static_cast<int>(order.size()) + cfg.batch_size - 1) / cfg.batch_size;
        for (int batch = 0; batch < num_batches; ++batch) {
            const int begin = batch * cfg.batch_size;
            const int end = std::min<int>(begin + cfg.batch_size, static_cast<int>(order.size()));

            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            std::fill(grad_b.begin(), grad_b.end(), 0.0);

            for (int bi = begin; bi < end; ++bi) {
                const SyntheticSample& s = train_set[order[bi]];
                const VolumeD logits = model.forward(s.features);
                const MapLossResult loss =
                    combined_loss(logits, s.pseudo_mask, s.tags, corr, epoch_cfg);
                if (!std::isfinite(loss.value)) {
                    throw TrainAbortError(epoch, batch,
                                          "non-finite loss at epoch " + std::to_string(epoch) +
                                              ", batch " + std::to_string(batch) + ", image '" +
                                              s.tags.image_id + "'");
                }

                // dL/dW[k,f] = sum_px dL/dz[k,px] * x[f,px]; dL/db[k] = sum_px dL/dz[k,px]
                const std::size_t plane =
                    static_cast<std::size_t>(logits.height) * logits.width;
                for (int k = 0; k < num_classes; ++k) {
                    const double* g = &loss.grad.data[static_cast<std::size_t>(k) * plane];
                    double gb = 0.0;
                    for (std::size_t i = 0; i < plane; ++i) gb += g[i];
                    grad_b[k] += gb;
                    for (int f = 0; f < num_features; ++f) {
                        const float* x = &s.features.data[static_cast<std::size_t>(f) * plane];
                        double gw = 0.0;
                        for (std::size_t i = 0; i < plane; ++i) gw += g[i] * x[i];
                        grad_w[static_cast<std::size_t>(k) * num_features + f] += gw;
                    }
                }
            }

            // v <- mu*v - lr*(grad/batch + wd*w);  w <- w + v
            const double inv_batch = 1.0 / static_cast<double>(end - begin);
            for (std::size_t i = 0; i < model.weights.size(); ++i) {
                vel_w[i] = cfg.momentum * vel_w[i] -
                           lr * (grad_w[i] * inv_batch + cfg.weight_decay * model.weights[i]);
                model.weights[i] += vel_w[i];
            }
            for (std::size_t i = 0; i < model.bias.size(); ++i) {
                vel_b[i] = cfg.momentum * vel_b[i] -
                           lr * (grad_b[i] * inv_batch + cfg.weight_decay * model.bias[i]);
                model.bias[i] += vel_b[i];
            }
        }

        if (tail > 0 && epoch > cfg.epochs - tail) {
            for (std::size_t i = 0; i < avg_w.size(); ++i) avg_w[i] += model.weights[i];
            for (std::size_t i = 0; i < avg_b.size(); ++i) avg_b[i] += model.bias[i];
        }

        // with tail averaging, the final record describes the returned model
        if (tail > 0 && epoch == cfg.epochs) {
            for (std::size_t i = 0; i < avg_w.size(); ++i) {
                model.weights[i] = avg_w[i] / static_cast<double>(tail);
            }
            for (std::size_t i = 0; i < avg_b.size(); ++i) {
                model.bias[i] = avg_b[i] / static_cast<double>(tail);
            }
        }

        const EpochRecord rec =
            make_record(epoch, lr, model, train_set, eval_set, corr, epoch_cfg, ls);
        if (!std::isfinite(rec.l_total)) {
            throw TrainAbortError(epoch, -1,
                                  "non-finite training loss after epoch " + std::to_string(epoch));
        }
        result.log.push_back(rec);
    }

    result.model = std::move(model);
    return result;
}

std::string epoch_record_json(const EpochRecord& rec) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"epoch\":%d,\"learning_rate\":%.17g,\"l_seg\":%.17g,\"l_rec\":%.17g,"
                  "\"l_total\":%.17g,\"eval_miou\":%.17g,\"eval_oc_image_error_rate\":%.17g,"
                  "\"eval_oc_pixel_fraction\":%.17g}",
                  rec.epoch, rec.learning_rate, rec.l_seg, rec.l_rec, rec.l_total, rec.eval_miou,
                  rec.eval_oc_image_error_rate, rec.eval_oc_pixel_fraction);
    return buf;
}

}  // namespace ocrect
