#pragma once

#include <vector>

#include "stroketext/distance.hpp"
#include "stroketext/regions.hpp"

namespace stroketext {

// A local maximum of the in-region distance map. Sits on the stroke axis,
// with d roughly half the local stroke width.
struct StrokeSupportPixel {
    int x = 0;
    int y = 0;
    double d = 0.0;
    int neighbor_count = 1;
    double weight = 3.0;
};

struct RegionFeatures {
    double stroke_area_ratio = 0.0;
    double aspect_ratio = 0.0;
    double compactness = 0.0;
    double hull_ratio = 0.0;
    double holes_ratio = 0.0;
};

struct StrokeArea {
    double weighted = 0.0;
    double unweighted = 0.0;
};

// dmap must be the distance transform of region_mask(region); SSP coordinates
// come back in image space. Maxima are non-strict so even-width strokes keep
// both center rows, and neighbors outside the region count as distance 0.
std::vector<StrokeSupportPixel> stroke_support_pixels(const Region& region,
                                                      const DistanceMap& dmap);

// weighted = 2 * sum(w_i * d_i), unweighted = 2 * sum(d_i). Contributions are
// summed in sorted order so congruent regions produce bit-identical results.
StrokeArea stroke_area(const std::vector<StrokeSupportPixel>& ssps);

double stroke_area_ratio(const Region& region);

RegionFeatures compute_features(const Region& region);

}  // namespace stroketext
