#include "ocrect/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace ocrect {

VolumeD LinearPixelModel::forward(const VolumeF& features) const {
    if (features.channels != num_features) {
        throw ValidationError("forward: model expects " + std::to_string(num_features) +
                              " feature channels, got " + std::to_string(features.channels));
    }
    const int height = features.height;
    const int width = features.width;
    VolumeD logits(num_classes, height, width);
    const std::size_t plane = static_cast<std::size_t>(height) * width;
    for (int k = 0; k < num_classes; ++k) {
        double* out = &logits.data[static_cast<std::size_t>(k) * plane];
        for (std::size_t i = 0; i < plane; ++i) out[i] = bias[k];
        for (int f = 0; f < num_features; ++f) {
            const double w = weight(k, f);
            const float* in = &features.data[static_cast<std::size_t>(f) * plane];
            for (std::size_t i = 0; i < plane; ++i) out[i] += w * in[i];
        }
    }
    return logits;
}

MaskMap predict_mask(const LinearPixelModel& model, const VolumeF& features) {
    const VolumeD logits = model.forward(features);
    MaskMap mask(features.height, features.width);
    const std::size_t plane = static_cast<std::size_t>(features.height) * features.width;
    for (std::size_t i = 0; i < plane; ++i) {
        int best = 0;
        double best_v = logits.data[i];
        for (int k = 1; k < model.num_classes; ++k) {
            const double v = logits.data[static_cast<std::size_t>(k) * plane + i];
            if (v > best_v) {
                best = k;
                best_v = v;
            }
        }
        mask.values[i] = static_cast<std::uint8_t>(best);
    }
    return mask;
}

namespace {

constexpr char kMagic[4] = {'O', 'C', 'R', 'M'};

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void save_model(const LinearPixelModel& model, const std::filesystem::path& path) {
    std::string buf;
    buf.append(kMagic, 4);
    put_u32le(buf, static_cast<std::uint32_t>(model.num_classes));
    put_u32le(buf, static_cast<std::uint32_t>(model.num_features));
    auto put_f32 = [&buf](double v) {
        if (!std::isfinite(v)) {
            throw ValidationError("save_model: non-finite parameter");
        }
        put_u32le(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    };
    for (double w : model.weights) put_f32(w);
    for (double b : model.bias) put_f32(b);

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open model file for writing: " + path.string());
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

LinearPixelModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open model file: " + path.string());
    }
    std::string buf(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw ValidationError(path.string() + ": missing OCRM magic");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    const std::uint32_t classes = get_u32le(p + 4);
    const std::uint32_t features = get_u32le(p + 8);
    if (classes < 2 || classes > 255 || features == 0 || features > (1u << 20)) {
        throw ValidationError(path.string() + ": implausible model dimensions");
    }
    const std::size_t count = static_cast<std::size_t>(classes) * features + classes;
    if (buf.size() != 12 + count * 4) {
        throw ValidationError(path.string() + ": payload size mismatch");
    }

    LinearPixelModel model(static_cast<int>(classes), static_cast<int>(features));
    auto get_f32 = [&](std::size_t i) {
        const float v = std::bit_cast<float>(get_u32le(p + 12 + i * 4));
        if (!std::isfinite(v)) {
            throw ValidationError(path.string() + ": non-finite parameter");
        }
        return static_cast<double>(v);
    };
    std::size_t idx = 0;
    for (double& w : model.weights) w = get_f32(idx++);
    for (double& b : model.bias) b = get_f32(idx++);
    return model;
}

}  // namespace ocrect
