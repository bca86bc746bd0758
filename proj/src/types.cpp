#include "ocrect/types.hpp"

#include <algorithm>

namespace ocrect {

TagSet make_tag_set(std::string image_id, std::vector<int> tags, const LabelSpace& ls) {
    if (tags.empty()) {
        throw ValidationError("tag set for image '" + image_id + "' is empty");
    }
    for (int t : tags) {
        if (!ls.valid_tag(t)) {
            throw ValidationError("tag " + std::to_string(t) + " for image '" + image_id +
                                  "' outside [1, " + std::to_string(ls.num_foreground()) + "]");
        }
    }
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return TagSet{std::move(image_id), std::move(tags)};
}

VolumeD widen(const VolumeF& v) {
    VolumeD out(v.channels, v.height, v.width);
    for (std::size_t i = 0; i < v.data.size(); ++i) out.data[i] = v.data[i];
    return out;
}

VolumeF narrow(const VolumeD& v) {
    VolumeF out(v.channels, v.height, v.width);
    for (std::size_t i = 0; i < v.data.size(); ++i) out.data[i] = static_cast<float>(v.data[i]);
    return out;
}

}  // namespace ocrect
