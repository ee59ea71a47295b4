#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stroketext/image.hpp"

namespace stroketext {

inline constexpr int kGlyphSize = 24;

// Distance assigned to an empty point set; just above the 24x24 diagonal so
// real distances always undercut it.
inline constexpr double kChamferBlank = 34.0;

// Sharp enough that a clean template match costs well under one unit while
// a shapeless blob stays near the uniform -ln(1/labels); the path search
// then prefers covering real glyphs and skipping junk.
inline constexpr double kDefaultGlyphTemperature = 0.1;

struct GlyphEntry {
    char32_t label = 0;
    BinaryMask mask;  // normalized to kGlyphSize square
    std::string font;
    double aspect = 1.0;  // w/h of the source glyph before normalization
    DistanceMap dmap;     // cached distance_to_set of mask
};

struct GlyphAtlas {
    std::vector<GlyphEntry> entries;
    std::map<char32_t, double> priors;

    double max_aspect() const;
    // Fills the cached distance maps; load_atlas and atlas builders call it.
    void prepare();
};

// Tight-crops the foreground, scales the larger side to kGlyphSize with
// nearest-neighbor sampling and centers the rest with padding. Throws on an
// empty mask.
BinaryMask normalize_glyph(const BinaryMask& mask);

// Mean symmetric chamfer distance between equal-size masks: the average of
// the two directed mean distances. An empty side contributes 0 as a source
// and kChamferBlank as a target.
double chamfer_distance(const BinaryMask& a, const BinaryMask& b);

// Normalizes the query, takes the best distance per label and maps distances
// to costs with a softmax at the given temperature. Returns the n cheapest
// (label, -ln p) pairs, ties broken by codepoint.
std::vector<std::pair<char32_t, double>> classify_glyph(
    const BinaryMask& mask, const GlyphAtlas& atlas, int n,
    double temperature = kDefaultGlyphTemperature);

// Directory layout: one 0/255 gray PNG per entry named U+XXXX_fontid.png
// plus manifest.json listing label, file, font, aspect and prior.
GlyphAtlas load_atlas(const std::string& dir);
void save_atlas(const GlyphAtlas& atlas, const std::string& dir);

}  // namespace stroketext
