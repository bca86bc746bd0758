#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ocrect/types.hpp"

namespace ocrect {

struct SynthConfig {
    std::uint64_t seed = 42;
    int num_images = 64;
    int classes = 8;        // foreground classes C
    int feature_dim = 16;
    int height = 48;
    int width = 48;
    double noise_rate = 0.3;
};

struct SynthStats {
    long total_regions = 0;      // painted rectangles with at least one visible pixel
    long relabeled_regions = 0;  // of those, how many were given a wrong class
};

// Scenes are background plus 1-3 axis-aligned rectangles of distinct
// foreground classes. Features are a per-class prototype vector (fixed by
// the seed) plus Gaussian noise. With probability noise_rate each visible
// rectangle region is relabeled in pseudo_mask to a uniformly random
// different foreground class drawn from the whole label space, so pseudo
// labels can contradict the image tags. Pure function of its arguments.
std::vector<SyntheticSample> generate_synthetic(const SynthConfig& cfg,
                                                SynthStats* stats = nullptr);

// On-disk layout written by synth-gen and consumed by train:
//   meta.json, tags.jsonl, gt/<id>.pgm, pseudo/<id>.pgm, features/<id>.ocrl
struct SynthDataset {
    int classes = 0;
    int feature_dim = 0;
    std::vector<SyntheticSample> samples;
};

void write_dataset(const std::vector<SyntheticSample>& samples, const SynthConfig& cfg,
                   const std::filesystem::path& dir);
SynthDataset load_dataset(const std::filesystem::path& dir);

}  // namespace ocrect
