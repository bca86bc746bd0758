#include "ocrect/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ocrect/correlation.hpp"
#include "ocrect/rectification.hpp"
#include "ocrect/rng.hpp"
#include "ocrect/seg_loss.hpp"
#include "ocrect/types.hpp"

namespace ocrect {

namespace {

TagSet random_tags(Rng& rng, const LabelSpace& ls, bool full) {
    std::vector<int> tags;
    if (full) {
        for (int k = 1; k <= ls.num_foreground(); ++k) tags.push_back(k);
    } else {
        for (int k = 1; k <= ls.num_foreground(); ++k) {
            if (rng.bernoulli(0.5)) tags.push_back(k);
        }
        if (tags.empty()) {
            tags.push_back(static_cast<int>(rng.uniform_int(1, ls.num_foreground())));
        }
    }
    return make_tag_set("gradcheck", std::move(tags), ls);
}

CorrelationMatrix random_corr(Rng& rng, const LabelSpace& ls) {
    const int n = ls.num_classes();
    CorrelationMatrix m;
    m.num_classes = n;
    m.num_images = 1;
    m.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            const double v = rng.uniform01();
            m.at(k, l) = v;
            m.at(l, k) = v;
        }
    }
    m.at(0, 0) = 1.0;
    return m;
}

SplitStrategy cycle_strategy(int trial) {
    switch (trial % 3) {
        case 0: return SplitStrategy::kAda;
        case 1: return SplitStrategy::kMax;
        default: return SplitStrategy::kAll;
    }
}

PixelSelect cycle_select(int trial) {
    switch ((trial / 3) % 3) {
        case 0: return PixelSelect::kOcOnly;
        case 1: return PixelSelect::kAll;
        default: return PixelSelect::kIcOnly;
    }
}

// Worst component difference scaled by the dominant component magnitude.
double vector_rel_err(const std::vector<double>& analytic, const std::vector<double>& fd) {
    double scale = 1e-12;
    double err = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        scale = std::max({scale, std::fabs(analytic[i]), std::fabs(fd[i])});
        err = std::max(err, std::fabs(analytic[i] - fd[i]));
    }
    return err / scale;
}

// Discrete decisions of the map loss at a given point: which pixels are
// selected and which ic set each uses. Finite differences are only valid
// where these do not change.
struct MapStructure {
    std::vector<int> selected;
    std::vector<std::vector<int>> ic_sets;

    bool operator==(const MapStructure&) const = default;
};

MapStructure map_structure(const VolumeD& logits, const MaskMap& pseudo, const TagSet& tags,
                           const CorrelationMatrix& corr, const OcrConfig& cfg) {
    MapStructure st;
    std::vector<double> pix(logits.channels);
    for (int y = 0; y < logits.height; ++y) {
        for (int x = 0; x < logits.width; ++x) {
            if (pseudo.at(y, x) == kIgnoreLabel) {
                st.selected.push_back(0);
                st.ic_sets.emplace_back();
                continue;
            }
            for (int k = 0; k < logits.channels; ++k) pix[k] = logits.at(k, y, x);
            const bool is_oc = oc_mask(pix, tags);
            const bool selected = cfg.pixel_select == PixelSelect::kAll ||
                                  (cfg.pixel_select == PixelSelect::kOcOnly && is_oc) ||
                                  (cfg.pixel_select == PixelSelect::kIcOnly && !is_oc);
            st.selected.push_back(selected ? 1 : 0);
            if (selected) {
                st.ic_sets.push_back(split_groups(pix, tags, corr, cfg).ic);
            } else {
                st.ic_sets.emplace_back();
            }
        }
    }
    return st;
}

}  // namespace

GradCheckReport run_gradcheck(const GradCheckConfig& cfg) {
    Rng rng(cfg.seed);
    GradCheckReport report;
    const double h = cfg.fd_step;

    // rectification loss, single pixels, split held fixed
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const LabelSpace ls(static_cast<int>(rng.uniform_int(2, cfg.max_classes)));
        const TagSet tags = random_tags(rng, ls, trial % 7 == 0);
        const CorrelationMatrix corr = random_corr(rng, ls);
        const double delta = 0.5 + 2.5 * rng.uniform01();

        OcrConfig ocfg;
        ocfg.split = cycle_strategy(trial);
        ocfg.delta = delta;
        std::vector<double> z(ls.num_classes());
        for (double& v : z) v = rng.normal() * 2.0;

        const GroupSplit split = split_groups(z, tags, corr, ocfg);
        PixelLossResult res = rect_loss_pixel(z, split, delta);
        if (cfg.perturbation != 0.0) res.grad[0] += cfg.perturbation;

        std::vector<double> fd(z.size());
        for (std::size_t j = 0; j < z.size(); ++j) {
            const double keep = z[j];
            z[j] = keep + h;
            const double up = rect_loss_pixel(z, split, delta).value;
            z[j] = keep - h;
            const double down = rect_loss_pixel(z, split, delta).value;
            z[j] = keep;
            fd[j] = (up - down) / (2.0 * h);
        }
        report.max_rel_err_rect = std::max(report.max_rel_err_rect, vector_rel_err(res.grad, fd));
        ++report.rect_trials;
    }

    // segmentation cross-entropy on small random maps
    const int map_trials = std::max(10, cfg.trials / 10);
    for (int trial = 0; trial < map_trials; ++trial) {
        const LabelSpace ls(static_cast<int>(rng.uniform_int(2, 6)));
        const int n = ls.num_classes();
        VolumeD logits(n, 3, 3);
        for (double& v : logits.data) v = rng.normal() * 2.0;
        MaskMap pseudo(3, 3);
        for (auto& v : pseudo.values) {
            v = rng.bernoulli(0.1) ? kIgnoreLabel
                                   : static_cast<std::uint8_t>(
                                         rng.uniform_int(0, ls.num_foreground()));
        }

        const MapLossResult res = seg_ce_loss(logits, pseudo);
        std::vector<double> fd(logits.data.size());
        for (std::size_t j = 0; j < logits.data.size(); ++j) {
            const double keep = logits.data[j];
            logits.data[j] = keep + h;
            const double up = seg_ce_loss(logits, pseudo).value;
            logits.data[j] = keep - h;
            const double down = seg_ce_loss(logits, pseudo).value;
            logits.data[j] = keep;
            fd[j] = (up - down) / (2.0 * h);
        }
        report.max_rel_err_seg = std::max(report.max_rel_err_seg,
                                          vector_rel_err(res.grad.data, fd));
        ++report.seg_trials;
    }

    // combined loss end to end, skipping coordinates on split boundaries
    for (int trial = 0; trial < map_trials; ++trial) {
        const LabelSpace ls(static_cast<int>(rng.uniform_int(2, 6)));
        const int n = ls.num_classes();
        const TagSet tags = random_tags(rng, ls, trial % 5 == 0);
        const CorrelationMatrix corr = random_corr(rng, ls);

        OcrConfig ocfg;
        ocfg.split = cycle_strategy(trial);
        ocfg.pixel_select = cycle_select(trial);
        ocfg.alpha = 1.0;

        VolumeD logits(n, 2, 2);
        for (double& v : logits.data) v = rng.normal() * 2.0;
        MaskMap pseudo(2, 2);
        for (auto& v : pseudo.values) {
            v = static_cast<std::uint8_t>(rng.uniform_int(0, ls.num_foreground()));
        }

        const MapLossResult res = combined_loss(logits, pseudo, tags, corr, ocfg);
        std::vector<double> analytic, fd;
        for (std::size_t j = 0; j < logits.data.size(); ++j) {
            const double keep = logits.data[j];
            logits.data[j] = keep + h;
            const MapStructure up_st = map_structure(logits, pseudo, tags, corr, ocfg);
            const double up = combined_loss(logits, pseudo, tags, corr, ocfg).value;
            logits.data[j] = keep - h;
            const MapStructure down_st = map_structure(logits, pseudo, tags, corr, ocfg);
            const double down = combined_loss(logits, pseudo, tags, corr, ocfg).value;
            logits.data[j] = keep;
            if (!(up_st == down_st)) {
                ++report.skipped_coords;
                continue;
            }
            analytic.push_back(res.grad.data[j]);
            fd.push_back((up - down) / (2.0 * h));
        }
        if (!analytic.empty()) {
            report.max_rel_err_combined =
                std::max(report.max_rel_err_combined, vector_rel_err(analytic, fd));
        }
        ++report.combined_trials;
    }

    return report;
}

}  // namespace ocrect
