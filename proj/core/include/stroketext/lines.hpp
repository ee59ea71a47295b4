#pragma once

#include <vector>

#include "stroketext/classifier.hpp"
#include "stroketext/regions.hpp"

namespace stroketext {

// y = slope * x + intercept in image coordinates (y grows downward);
// residual is the largest vertical deviation of a member bottom-center.
struct BottomLine {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

struct TextLineHypothesis {
    std::vector<int> members;  // indices into the region list, ordered by x
    BottomLine bottom_line;
    int x = 0, y = 0, w = 0, h = 0;  // tight bbox over member regions
    double line_height = 0.0;        // median member height
};

// Character regions form triplets with pairs drawn from their nearest
// neighbors; every multi-character region stands alone with its bbox bottom
// edge as the line. Triplets must have compatible heights, vertical overlap,
// bounded horizontal gaps, a near-horizontal fit, and bottom-centers within
// a quarter line-height of the fitted line.
std::vector<TextLineHypothesis> propose_triplets(const std::vector<Region>& regions,
                                                 const std::vector<RegionClass>& classes,
                                                 int k_nearest = 5);

// Merge the closest pair until no distance is below tau. Distance refits the
// joint bottom line and takes the worst member deviation over the joint
// median height. The default tolerates baseline jitter up to ~0.1 of the
// height but rejects the sloped fit that would fuse two side-by-side rows
// offset by half a glyph height.
std::vector<TextLineHypothesis> agglomerate(const std::vector<Region>& regions,
                                            std::vector<TextLineHypothesis> lines,
                                            double tau_merge = 0.15);

// Lines sharing a region conflict; per connected cluster keep the one with
// most members (ties: smaller residual, then smaller bbox).
std::vector<TextLineHypothesis> resolve_conflicts(
    const std::vector<TextLineHypothesis>& lines);

}  // namespace stroketext
