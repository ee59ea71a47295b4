#include "stroketext/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stroketext {

namespace {

const char* const kWords[] = {
    "taxi",    "exit",    "open",    "stop",    "sale",    "shop",    "cafe",   "park",
    "hotel",   "metro",   "pizza",   "bank",    "north",   "south",   "east",   "west",
    "street",  "market",  "center",  "garden",  "bridge",  "house",   "plaza",  "route",
    "coffee",  "bakery",  "books",   "music",   "cinema",  "tickets", "museum", "school",
    "airport", "station", "library", "gallery", "theater", "parking", "police", "fire",
    "water",   "bread",   "fresh",   "daily",   "local",   "grand",   "royal",  "plus",
    "free",    "fast",    "slow",    "left",    "right",   "main",    "old",    "new",
    "big",     "red",     "blue",    "green",   "gold",    "silver",  "corner", "square",
    "tower",   "river",   "lake",    "hill",    "road",    "lane",    "walk",   "ride",
    "food",    "fruit",   "juice",   "milk",    "tea",     "wine",    "beer",   "cake",
    "fish",    "meat",    "rice",    "soup",    "salad",   "grill",   "candy",  "sugar",
    "paper",   "glass",   "steel",   "stone",   "brick",   "cloud",   "stormy", "sunny",
    "rain",    "snow",    "wind",    "summer",  "winter",  "spring",  "autumn", "night",
    "day",     "hour",    "time",    "watch",   "clock",   "phone",   "radio",  "photo",
    "print",   "press",   "news",    "post",    "mail",    "gift",    "toys",   "games",
};

std::u32string widen(const std::string& s) {
    std::u32string out;
    for (char c : s) out.push_back(char32_t(c));
    return out;
}

std::u32string capitalize(std::u32string s) {
    if (!s.empty() && s[0] >= U'a' && s[0] <= U'z') s[0] = s[0] - U'a' + U'A';
    return s;
}

std::u32string upper(std::u32string s) {
    for (char32_t& c : s)
        if (c >= U'a' && c <= U'z') c = c - U'a' + U'A';
    return s;
}

}  // namespace

const std::vector<std::u32string>& builtin_wordlist() {
    static const std::vector<std::u32string> words = [] {
        std::vector<std::u32string> v;
        for (const char* w : kWords) v.push_back(widen(w));
        return v;
    }();
    return words;
}

std::vector<std::pair<std::u32string, long long>> builtin_trigram_counts() {
    std::map<std::u32string, long long> counts;
    const char32_t s = LanguageModel::kStart;
    for (const std::u32string& w : builtin_wordlist())
        for (const std::u32string& variant : {w, capitalize(w), upper(w)}) {
            // Start-padded trigrams give word-initial characters real
            // conditional mass; without them every word onset bottoms out in
            // unigram backoff and decoding favors clipping the first letter.
            ++counts[{s, s, variant[0]}];
            ++counts[{s, variant[0], variant[1]}];
            for (size_t i = 0; i + 3 <= variant.size(); ++i)
                ++counts[variant.substr(i, 3)];
        }
    return {counts.begin(), counts.end()};
}

LanguageModel builtin_language_model() {
    return LanguageModel::from_counts(builtin_trigram_counts());
}

namespace {

struct InkSpec {
    // Pixel sets in image coordinates, one per character.
    std::vector<std::vector<Pt>> chars;
    int x = 0, y = 0, w = 0, h = 0;  // tight ink bbox
};

InkSpec word_ink(const std::u32string& text, int ox, int oy, int scale, int advance_cols) {
    InkSpec ink;
    int pen = ox;
    int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
    for (char32_t c : text) {
        BinaryMask g = builtin_glyph(c);
        std::vector<Pt> px;
        for (int gy = 0; gy < 7; ++gy)
            for (int gx = 0; gx < 5; ++gx) {
                if (!g.get(gx, gy)) continue;
                for (int dy = 0; dy < scale; ++dy)
                    for (int dx = 0; dx < scale; ++dx) {
                        Pt p{pen + gx * scale + dx, oy + gy * scale + dy};
                        px.push_back(p);
                        x0 = std::min(x0, p.x);
                        y0 = std::min(y0, p.y);
                        x1 = std::max(x1, p.x);
                        y1 = std::max(y1, p.y);
                    }
            }
        ink.chars.push_back(std::move(px));
        pen += advance_cols * scale;
    }
    ink.x = x0;
    ink.y = y0;
    ink.w = x1 - x0 + 1;
    ink.h = y1 - y0 + 1;
    return ink;
}

bool boxes_clear(int ax, int ay, int aw, int ah, int bx, int by, int bw, int bh, int pad) {
    return ax + aw + pad <= bx || bx + bw + pad <= ax || ay + ah + pad <= by ||
           by + bh + pad <= ay;
}

uint8_t clamp_byte(double v) { return uint8_t(std::clamp(v, 0.0, 255.0)); }

}  // namespace

Scene generate_scene(Rng& rng, const CorpusParams& params) {
    Scene scene;
    int bg_low = 10 + int(rng.uniform_int(0, 40));
    // Per-channel tint moves ink by up to 8 levels; keep the gray contrast
    // comfortably above the configured floor.
    int contrast = params.min_contrast + 16 + int(rng.uniform_int(0, 44));
    bool dark_text = rng.uniform_int(0, 1) == 1;
    int text_level = dark_text ? bg_low : std::min(245, bg_low + contrast);
    int bg_level = dark_text ? std::min(245, bg_low + contrast) : bg_low;

    scene.image = ColorImage(params.width, params.height);
    for (int y = 0; y < params.height; ++y)
        for (int x = 0; x < params.width; ++x) {
            double v = bg_level;
            scene.image.set(x, y, clamp_byte(v), clamp_byte(v), clamp_byte(v));
        }

    struct Placed {
        int x, y, w, h;
    };
    std::vector<Placed> placed;

    int n_words = int(rng.uniform_int(params.min_words, params.max_words));
    const auto& list = builtin_wordlist();
    for (int wi = 0; wi < n_words; ++wi) {
        std::u32string word;
        for (int attempt = 0; attempt < 50 && word.empty(); ++attempt) {
            std::u32string w = list[size_t(rng.uniform_int(0, int64_t(list.size()) - 1))];
            if (int(w.size()) < params.min_len || int(w.size()) > params.max_len) continue;
            switch (rng.uniform_int(0, 2)) {
                case 0: word = w; break;
                case 1: word = capitalize(w); break;
                default: word = upper(w);
            }
        }
        if (word.empty()) continue;
        int advance = rng.uniform(0.0, 1.0) < params.merge_prob ? 5 : 6;

        for (int attempt = 0; attempt < 200; ++attempt) {
            int scale = int(rng.uniform_int(params.min_scale, params.max_scale));
            int bw = (advance * int(word.size()) - (advance - 5)) * scale;
            int bh = 7 * scale;
            if (bw + 12 >= params.width || bh + 12 >= params.height) continue;
            int x = int(rng.uniform_int(6, params.width - bw - 6));
            int y = int(rng.uniform_int(6, params.height - bh - 6));
            int pad = std::max(8, 2 * scale);
            bool clear = true;
            for (const Placed& p : placed)
                if (!boxes_clear(x, y, bw, bh, p.x, p.y, p.w, p.h, pad)) {
                    clear = false;
                    break;
                }
            if (!clear) continue;

            int tint_r = int(rng.uniform_int(-8, 8));
            int tint_g = int(rng.uniform_int(-8, 8));
            int tint_b = int(rng.uniform_int(-8, 8));
            InkSpec ink = word_ink(word, x, y, scale, advance);
            for (size_t ci = 0; ci < ink.chars.size(); ++ci) {
                Region r;
                r.pixels = ink.chars[ci];
                for (const Pt& p : r.pixels)
                    scene.image.set(p.x, p.y, clamp_byte(text_level + tint_r),
                                    clamp_byte(text_level + tint_g),
                                    clamp_byte(text_level + tint_b));
                finalize_region(r);
                scene.chars.push_back(std::move(r));
            }
            scene.words.push_back({ink.x, ink.y, ink.w, ink.h, word});
            placed.push_back({ink.x, ink.y, ink.w, ink.h});
            break;
        }
    }

    if (rng.uniform(0.0, 1.0) < params.distractor_prob) {
        int blobs = int(rng.uniform_int(1, 2));
        for (int b = 0; b < blobs; ++b) {
            for (int attempt = 0; attempt < 100; ++attempt) {
                int r = int(rng.uniform_int(8, 30));
                int cx = int(rng.uniform_int(r + 4, params.width - r - 4));
                int cy = int(rng.uniform_int(r + 4, params.height - r - 4));
                bool clear = true;
                for (const Placed& p : placed)
                    if (!boxes_clear(cx - r, cy - r, 2 * r, 2 * r, p.x, p.y, p.w, p.h, 8)) {
                        clear = false;
                        break;
                    }
                if (!clear) continue;
                for (int y = cy - r; y <= cy + r; ++y)
                    for (int x = cx - r; x <= cx + r; ++x)
                        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r)
                            scene.image.set(x, y, clamp_byte(text_level), clamp_byte(text_level),
                                            clamp_byte(text_level));
                placed.push_back({cx - r, cy - r, 2 * r, 2 * r});
                break;
            }
        }
    }

    if (params.noise_sigma > 0.0)
        for (int y = 0; y < params.height; ++y)
            for (int x = 0; x < params.width; ++x) {
                uint8_t* p = scene.image.px(x, y);
                for (int c = 0; c < 3; ++c)
                    p[c] = clamp_byte(p[c] + rng.gaussian(0.0, params.noise_sigma));
            }

    return scene;
}

}  // namespace stroketext
