#pragma once

#include <cstdint>
#include <vector>

#include "stroketext/atlas.hpp"
#include "stroketext/classifier.hpp"
#include "stroketext/image.hpp"
#include "stroketext/lines.hpp"
#include "stroketext/lm.hpp"
#include "stroketext/mser.hpp"
#include "stroketext/recognize.hpp"
#include "stroketext/segment.hpp"

namespace stroketext {

struct PipelineParams {
    MserParams mser;  // max_area left at its default caps to a quarter image
    SegmentParams segment;
    double lambda = 0.5;
    double glyph_temperature = kDefaultGlyphTemperature;
    int top_labels = 3;
    std::vector<double> scales = {1.0, 0.7, 0.5, 0.35, 0.25};
    int min_side = 100;
    uint64_t seed = 1;
    int jobs = 1;
};

struct PipelineModels {
    KernelModel classifier;
    GlyphAtlas atlas;
    LanguageModel lm;
};

// Candidate regions from four detector passes (intensity and hue, both
// polarities). Near-duplicates across passes (pixel IoU >= 0.9) keep the
// first occurrence in pass order.
std::vector<Region> detect_candidate_regions(const ColorImage& img, const MserParams& base);

// Candidates of one image labeled against per-character ground-truth masks;
// regions matching no rule are dropped (see label_regions).
std::vector<TrainingSample> collect_training_samples(const ColorImage& img,
                                                     const std::vector<BinaryMask>& gt_chars,
                                                     const MserParams& base);

// The full detector: per scale MSER candidates -> classification -> line
// grouping -> segmentation refinement -> recognition, then one cross-scale
// merge. Word boxes come back in original image coordinates, cheapest first.
std::vector<WordBox> run_image(const ColorImage& img, const PipelineModels& models,
                               const PipelineParams& params);

}  // namespace stroketext
