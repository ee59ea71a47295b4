#pragma once

#include <limits>
#include <vector>

#include "stroketext/image.hpp"
#include "stroketext/regions.hpp"

namespace stroketext {

enum class MserPolarity { DarkOnLight, LightOnDark };

struct MserParams {
    int delta = 5;
    int min_area = 30;
    int max_area = std::numeric_limits<int>::max();
    double max_variation = 0.5;
    double min_diversity = 0.2;
};

// Defaults with max_area capped at a quarter of the image.
MserParams mser_defaults(int width, int height);

// Component-tree MSER. A region R_l (8-connected component of {p: I(p) <= l})
// is kept when its one-sided variation v = (|R_{l+delta}| - |R_l|)/|R_l| is
// minimal along its tree branch and within max_variation; nested survivors
// whose relative area difference falls below min_diversity are deduplicated
// in favor of the lower-variation one. Light polarity runs on the inverted
// image. Thresholds past 255 clamp to 255.
std::vector<Region> detect_msers(const GrayImage& img, const MserParams& params,
                                 MserPolarity polarity);

}  // namespace stroketext
