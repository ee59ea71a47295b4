#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stroketext/atlas.hpp"
#include "stroketext/image.hpp"
#include "stroketext/lm.hpp"
#include "stroketext/regions.hpp"
#include "stroketext/rng.hpp"

namespace stroketext {

// Built-in 5x7 dot-matrix font covering digits and basic latin letters,
// 62 glyphs. Lowercase uses x-height forms so the normalized masks stay
// pairwise distinct from their uppercase counterparts.
const std::vector<char32_t>& builtin_alphabet();

// Glyph on its untrimmed 5x7 grid; throws for unsupported codepoints.
BinaryMask builtin_glyph(char32_t c);

GlyphAtlas builtin_atlas();

const std::vector<std::u32string>& builtin_wordlist();

// Trigrams over lowercase, Capitalized and UPPERCASE variants of the word
// list; the scene generator draws from the same three variants.
std::vector<std::pair<std::u32string, long long>> builtin_trigram_counts();
LanguageModel builtin_language_model();

struct CorpusParams {
    int width = 640;
    int height = 480;
    int min_words = 2;
    int max_words = 4;
    int min_len = 3;
    int max_len = 8;
    int min_scale = 3;  // glyph pixel size multiplier
    int max_scale = 8;
    int min_contrast = 80;
    double noise_sigma = 4.0;
    double distractor_prob = 0.3;
    // Chance a word renders without inter-glyph spacing, fusing its letters
    // into one connected component. Training corpora need these to supply
    // multi-character examples.
    double merge_prob = 0.0;
};

struct SceneWord {
    int x = 0, y = 0, w = 0, h = 0;
    std::u32string text;
};

struct Scene {
    ColorImage image;
    std::vector<SceneWord> words;
    // Pixel-accurate per-character regions, for classifier training labels.
    std::vector<Region> chars;
};

Scene generate_scene(Rng& rng, const CorpusParams& params = {});

}  // namespace stroketext
