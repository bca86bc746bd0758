#include "ocrect/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ocrect/pgm_io.hpp"
#include "ocrect/rng.hpp"
#include "ocrect/tags_io.hpp"
#include "ocrect/volume_io.hpp"

namespace ocrect {

namespace {

constexpr double kPrototypeLength = 6.0;
constexpr double kFeatureNoiseSigma = 0.38;
constexpr int kMinSide = 8;  // room for a side/3 x side/3 rectangle

struct Rect {
    int x0, y0, w, h;
    int cls;
};

std::string image_id(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "img_%04d", index);
    return buf;
}

}  // namespace

std::vector<SyntheticSample> generate_synthetic(const SynthConfig& cfg, SynthStats* stats) {
    const LabelSpace ls(cfg.classes);
    if (cfg.num_images < 1) {
        throw ValidationError("generate_synthetic: num_images must be positive");
    }
    if (cfg.feature_dim < 1) {
        throw ValidationError("generate_synthetic: feature_dim must be positive");
    }
    if (cfg.noise_rate < 0.0 || cfg.noise_rate >= 1.0) {
        throw ValidationError("generate_synthetic: noise_rate must lie in [0, 1)");
    }
    if (cfg.noise_rate > 0.0 && cfg.classes < 2) {
        throw ValidationError("generate_synthetic: relabeling requires at least 2 classes");
    }
    if (cfg.height < kMinSide || cfg.width < kMinSide) {
        throw ValidationError("generate_synthetic: scene " + std::to_string(cfg.width) + "x" +
                              std::to_string(cfg.height) + " too small to place a rectangle (min " +
                              std::to_string(kMinSide) + ")");
    }

    Rng rng(cfg.seed);

    // Class prototypes are fixed by the seed and shared across images:
    // Gram-Schmidt over seeded Gaussian draws gives random orthogonal
    // directions, so every class pair sits at the same distance. When the
    // label space outgrows the feature dimension the extra prototypes stay
    // as plain normalized draws.
    const int num_protos = cfg.classes + 1;
    std::vector<double> proto(static_cast<std::size_t>(num_protos) * cfg.feature_dim);
    for (int c = 0; c < num_protos; ++c) {
        double* row = &proto[static_cast<std::size_t>(c) * cfg.feature_dim];
        double norm2 = 0.0;
        while (norm2 < 1e-12) {
            for (int f = 0; f < cfg.feature_dim; ++f) row[f] = rng.normal();
            const int limit = c < cfg.feature_dim ? c : 0;
            for (int prev = 0; prev < limit; ++prev) {
                const double* other = &proto[static_cast<std::size_t>(prev) * cfg.feature_dim];
                double dot = 0.0;
                for (int f = 0; f < cfg.feature_dim; ++f) dot += row[f] * other[f];
                const double coeff = dot / (kPrototypeLength * kPrototypeLength);
                for (int f = 0; f < cfg.feature_dim; ++f) row[f] -= coeff * other[f];
            }
            norm2 = 0.0;
            for (int f = 0; f < cfg.feature_dim; ++f) norm2 += row[f] * row[f];
        }
        const double scale = kPrototypeLength / std::sqrt(norm2);
        for (int f = 0; f < cfg.feature_dim; ++f) row[f] *= scale;
    }

    SynthStats local{};
    std::vector<SyntheticSample> samples;
    samples.reserve(cfg.num_images);

    std::vector<int> class_pool(cfg.classes);
    for (int i = 0; i < cfg.classes; ++i) class_pool[i] = i + 1;

    for (int img = 0; img < cfg.num_images; ++img) {
        SyntheticSample s;
        s.gt_mask = MaskMap(cfg.height, cfg.width, 0);

        const int n_rects = static_cast<int>(rng.uniform_int(1, 3));
        // distinct classes via partial Fisher-Yates
        for (int j = 0; j < n_rects; ++j) {
            const auto pick = static_cast<int>(rng.uniform_int(j, cfg.classes - 1));
            std::swap(class_pool[j], class_pool[pick]);
        }

        std::vector<Rect> rects;
        rects.reserve(n_rects);
        for (int j = 0; j < n_rects; ++j) {
            Rect r;
            r.w = static_cast<int>(rng.uniform_int(cfg.width * 2 / 5, cfg.width / 2));
            r.h = static_cast<int>(rng.uniform_int(cfg.height * 2 / 5, cfg.height / 2));
            r.x0 = static_cast<int>(rng.uniform_int(0, cfg.width - r.w));
            r.y0 = static_cast<int>(rng.uniform_int(0, cfg.height - r.h));
            r.cls = class_pool[j];
            rects.push_back(r);
            for (int y = r.y0; y < r.y0 + r.h; ++y) {
                for (int x = r.x0; x < r.x0 + r.w; ++x) {
                    s.gt_mask.at(y, x) = static_cast<std::uint8_t>(r.cls);
                }
            }
        }

        // Region-level label noise: whole visible rectangle interiors flip to
        // a random different foreground class, possibly outside the tags.
        s.pseudo_mask = s.gt_mask;
        for (const Rect& r : rects) {
            bool visible = false;
            for (int y = r.y0; y < r.y0 + r.h && !visible; ++y) {
                for (int x = r.x0; x < r.x0 + r.w; ++x) {
                    if (s.gt_mask.at(y, x) == r.cls) {
                        visible = true;
                        break;
                    }
                }
            }
            if (!visible) continue;
            ++local.total_regions;
            if (!rng.bernoulli(cfg.noise_rate)) continue;
            ++local.relabeled_regions;
            int wrong = static_cast<int>(rng.uniform_int(1, cfg.classes - 1));
            if (wrong >= r.cls) ++wrong;
            for (int y = r.y0; y < r.y0 + r.h; ++y) {
                for (int x = r.x0; x < r.x0 + r.w; ++x) {
                    if (s.gt_mask.at(y, x) == r.cls) {
                        s.pseudo_mask.at(y, x) = static_cast<std::uint8_t>(wrong);
                    }
                }
            }
        }

        s.features = VolumeF(cfg.feature_dim, cfg.height, cfg.width);
        for (int f = 0; f < cfg.feature_dim; ++f) {
            for (int y = 0; y < cfg.height; ++y) {
                for (int x = 0; x < cfg.width; ++x) {
                    const int cls = s.gt_mask.at(y, x);
                    const double mean = proto[static_cast<std::size_t>(cls) * cfg.feature_dim + f];
                    s.features.at(f, y, x) =
                        static_cast<float>(mean + rng.normal() * kFeatureNoiseSigma);
                }
            }
        }

        // Tags are exactly the foreground classes visible in the ground truth.
        std::vector<bool> present(cfg.classes + 1, false);
        for (std::uint8_t v : s.gt_mask.values) present[v] = true;
        std::vector<int> tags;
        for (int k = 1; k <= cfg.classes; ++k) {
            if (present[k]) tags.push_back(k);
        }
        s.tags = make_tag_set(image_id(img), std::move(tags), ls);

        samples.push_back(std::move(s));
    }

    if (stats) *stats = local;
    return samples;
}

void write_dataset(const std::vector<SyntheticSample>& samples, const SynthConfig& cfg,
                   const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "gt");
    fs::create_directories(dir / "pseudo");
    fs::create_directories(dir / "features");

    nlohmann::ordered_json meta;
    meta["classes"] = cfg.classes;
    meta["feature_dim"] = cfg.feature_dim;
    meta["height"] = cfg.height;
    meta["width"] = cfg.width;
    meta["images"] = static_cast<int>(samples.size());
    meta["noise_rate"] = cfg.noise_rate;
    meta["seed"] = cfg.seed;
    std::ofstream out(dir / "meta.json", std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + (dir / "meta.json").string());
    }
    out << meta.dump(2) << "\n";
    out.close();

    std::vector<TagSet> tag_sets;
    tag_sets.reserve(samples.size());
    for (const SyntheticSample& s : samples) tag_sets.push_back(s.tags);
    write_tags(tag_sets, dir / "tags.jsonl");

    for (const SyntheticSample& s : samples) {
        write_mask(s.gt_mask, dir / "gt" / (s.tags.image_id + ".pgm"));
        write_mask(s.pseudo_mask, dir / "pseudo" / (s.tags.image_id + ".pgm"));
        write_volume(s.features, dir / "features" / (s.tags.image_id + ".ocrl"));
    }
}

SynthDataset load_dataset(const std::filesystem::path& dir) {
    std::ifstream in(dir / "meta.json");
    if (!in) {
        throw ValidationError("cannot open " + (dir / "meta.json").string());
    }
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError((dir / "meta.json").string() + ": " + e.what());
    }
    for (const char* key : {"classes", "feature_dim", "height", "width"}) {
        if (!meta.contains(key) || !meta[key].is_number_integer()) {
            throw ValidationError((dir / "meta.json").string() + ": missing integer field \"" +
                                  key + "\"");
        }
    }

    SynthDataset ds;
    ds.classes = meta["classes"].get<int>();
    ds.feature_dim = meta["feature_dim"].get<int>();
    const int height = meta["height"].get<int>();
    const int width = meta["width"].get<int>();
    const LabelSpace ls(ds.classes);

    const std::vector<TagSet> tag_sets = read_tags(dir / "tags.jsonl", ls);
    ds.samples.reserve(tag_sets.size());
    for (const TagSet& ts : tag_sets) {
        SyntheticSample s;
        s.tags = ts;
        s.gt_mask = read_mask(dir / "gt" / (ts.image_id + ".pgm"), ls);
        s.pseudo_mask = read_mask(dir / "pseudo" / (ts.image_id + ".pgm"), ls);
        s.features = read_volume(dir / "features" / (ts.image_id + ".ocrl"));
        if (!s.gt_mask.same_shape(s.pseudo_mask) || s.gt_mask.height != height ||
            s.gt_mask.width != width || s.features.height != height ||
            s.features.width != width || s.features.channels != ds.feature_dim) {
            throw ValidationError("dataset " + dir.string() + ": inconsistent shapes for image '" +
                                  ts.image_id + "'");
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

}  // namespace ocrect
