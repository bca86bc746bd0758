#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocrect {

// Raised for any malformed or contract-violating external input: files,
// tag sets, masks, shapes. The CLI maps it to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reserved pixel value: excluded from every loss and metric.
inline constexpr std::uint8_t kIgnoreLabel = 255;

// C foreground classes plus background at index 0. Every class index used
// anywhere lies in [0, C]. C is capped at 254 so class indices and the
// ignore value fit one PGM byte.
class LabelSpace {
public:
    explicit LabelSpace(int num_foreground) : c_(num_foreground) {
        if (c_ < 1 || c_ > 254) {
            throw ValidationError("label space requires 1 <= C <= 254, got " +
                                  std::to_string(num_foreground));
        }
    }

    int num_foreground() const { return c_; }
    int num_classes() const { return c_ + 1; }
    bool valid_class(int k) const { return k >= 0 && k <= c_; }
    bool valid_tag(int k) const { return k >= 1 && k <= c_; }

private:
    int c_;
};

// Per-image candidate label set: sorted, duplicate-free foreground indices.
// Background is never a member.
struct TagSet {
    std::string image_id;
    std::vector<int> tags;

    bool contains(int k) const {
        for (int t : tags) {
            if (t == k) return true;
            if (t > k) break;
        }
        return false;
    }
};

// Validates and canonicalizes (sorts, deduplicates) a tag list.
TagSet make_tag_set(std::string image_id, std::vector<int> tags, const LabelSpace& ls);

// Per-pixel class indices in [0, C], plus kIgnoreLabel.
struct MaskMap {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> values;

    MaskMap() = default;
    MaskMap(int h, int w, std::uint8_t fill = 0)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

    std::uint8_t& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
    bool same_shape(const MaskMap& o) const { return height == o.height && width == o.width; }
};

// Dense (channels, height, width) array, channel-major then row-major.
// float for storage and file formats, double for loss and gradient math.
template <typename T>
struct Volume {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<T> data;

    Volume() = default;
    Volume(int c, int h, int w, T fill = T{})
        : channels(c), height(h), width(w),
          data(static_cast<std::size_t>(c) * h * w, fill) {}

    T& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    T at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    bool same_shape(const Volume& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

using VolumeF = Volume<float>;
using VolumeD = Volume<double>;

VolumeD widen(const VolumeF& v);
VolumeF narrow(const VolumeD& v);

// One generated scene. tags always equal the set of foreground classes
// present in gt_mask; pseudo_mask may contain classes outside tags.
struct SyntheticSample {
    VolumeF features;   // (F, H, W)
    MaskMap gt_mask;
    MaskMap pseudo_mask;
    TagSet tags;
};

}  // namespace ocrect
