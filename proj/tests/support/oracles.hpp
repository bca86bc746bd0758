#pragma once

// Literal evaluators written straight from the defining formulas. They stay
// independent of the library code paths they are used to check: plain
// argmax scans, unshifted softmax, direct exponential sums, double loops.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

inline bool contains(const std::vector<int>& v, int k) {
    return std::find(v.begin(), v.end(), k) != v.end();
}

// m_oc = 1 iff argmax_k z_k lies outside tags+background.
inline bool oc_mask(const std::vector<double>& z, const std::vector<int>& tags) {
    int top = 0;
    for (int k = 1; k < static_cast<int>(z.size()); ++k) {
        if (z[k] > z[top]) top = k;
    }
    if (top == 0) return false;
    return !contains(tags, top);
}

inline int anchor(const std::vector<double>& z, const std::vector<int>& tags) {
    std::vector<int> candidates{0};
    for (int t : tags) candidates.push_back(t);
    int best = candidates[0];
    for (int k : candidates) {
        if (z[k] > z[best]) best = k;
    }
    return best;
}

// Adaptive in-candidate group: anchor plus every candidate k with
// P_anchor - P_k * M[anchor][k] < t, softmax taken over all classes.
inline std::vector<int> ada_ic(const std::vector<double>& z, const std::vector<int>& tags,
                               const std::vector<std::vector<double>>& m, double t) {
    const int n = static_cast<int>(z.size());
    double total = 0.0;
    for (double v : z) total += std::exp(v);
    std::vector<double> p(n);
    for (int k = 0; k < n; ++k) p[k] = std::exp(z[k]) / total;

    const int a = anchor(z, tags);
    std::vector<int> candidates{0};
    for (int tag : tags) candidates.push_back(tag);

    std::vector<int> ic;
    for (int k : candidates) {
        if (k == a || p[a] - p[k] * m[a][k] < t) ic.push_back(k);
    }
    std::sort(ic.begin(), ic.end());
    return ic;
}

// Direct exponential-sum evaluation of the rectification loss.
inline double rect_value(const std::vector<double>& z, const std::vector<int>& ic,
                         const std::vector<int>& oc, double delta) {
    if (oc.empty()) return 0.0;
    double a = 0.0, b = 0.0;
    for (int k : ic) a += std::exp(-z[k]);
    for (int l : oc) b += std::exp(z[l] + delta);
    return std::log(1.0 + a * b);
}

// O(L*C^2) co-occurrence counter with background present in every image.
inline std::vector<std::vector<double>> build_corr(const std::vector<std::vector<int>>& tag_lists,
                                                   int classes) {
    const int n = classes + 1;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            long count = 0;
            for (const auto& tags : tag_lists) {
                const bool has_k = k == 0 || contains(tags, k);
                const bool has_l = l == 0 || contains(tags, l);
                if (has_k && has_l) ++count;
            }
            m[k][l] = static_cast<double>(count) / static_cast<double>(tag_lists.size());
        }
    }
    return m;
}

// Per-pixel loop IoU: no confusion matrix, straight TP/FP/FN counting.
struct IouCounts {
    long tp = 0, fp = 0, fn = 0;
};

inline std::vector<IouCounts> iou_counts(const std::vector<std::vector<int>>& preds,
                                         const std::vector<std::vector<int>>& gts, int classes,
                                         int ignore_value) {
    std::vector<IouCounts> counts(classes + 1);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (std::size_t px = 0; px < preds[i].size(); ++px) {
            const int p = preds[i][px];
            const int g = gts[i][px];
            if (p == ignore_value || g == ignore_value) continue;
            for (int c = 0; c <= classes; ++c) {
                if (p == c && g == c) ++counts[c].tp;
                if (p == c && g != c) ++counts[c].fp;
                if (p != c && g == c) ++counts[c].fn;
            }
        }
    }
    return counts;
}

}  // namespace oracle
