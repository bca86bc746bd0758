#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ocrect {

// log(sum_i exp(x_i)), max-shifted. Requires nonempty input.
inline double log_sum_exp(std::span<const double> x) {
    double m = x[0];
    for (double v : x) m = std::max(m, v);
    double s = 0.0;
    for (double v : x) s += std::exp(v - m);
    return m + std::log(s);
}

// log(1 + e^x); linear shortcut for large arguments.
inline double softplus(double x) {
    if (x > 30.0) return x;
    return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline std::vector<double> softmax(std::span<const double> z) {
    double m = z[0];
    for (double v : z) m = std::max(m, v);
    std::vector<double> p(z.size());
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - m);
        s += p[i];
    }
    for (double& v : p) v /= s;
    return p;
}

// Index of the largest entry; ties break to the lowest index.
inline int argmax(std::span<const double> z) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(z.size()); ++i) {
        if (z[i] > z[best]) best = i;
    }
    return best;
}

}  // namespace ocrect
