#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "stroketext/corpus.hpp"
#include "stroketext/rng.hpp"
#include "testutil.hpp"

using namespace stroketext;

TEST_CASE("builtin wordlist is lowercase ascii in the length range") {
    auto words = builtin_wordlist();
    CHECK(words.size() >= 100);
    std::set<std::u32string> seen;
    for (const auto& w : words) {
        CHECK(w.size() >= 3);
        CHECK(w.size() <= 8);
        for (char32_t c : w) CHECK((c >= U'a' && c <= U'z'));
        CHECK(seen.insert(w).second);
    }
}

TEST_CASE("trigram counts cover three case variants of each word") {
    auto counts = builtin_trigram_counts();
    std::set<std::u32string> grams;
    long long total = 0;
    for (const auto& [g, c] : counts) {
        CHECK(g.size() == 3);
        CHECK(c > 0);
        CHECK(grams.insert(g).second);
        total += c;
    }
    CHECK(grams.count(U"tax"));
    CHECK(grams.count(U"Tax"));
    CHECK(grams.count(U"TAX"));
    const char32_t s = LanguageModel::kStart;
    CHECK(grams.count({s, s, U't'}));
    CHECK(grams.count({s, U't', U'a'}));
    CHECK(grams.count({s, s, U'T'}));
    CHECK(grams.count({s, U'T', U'a'}));
    // Interior trigrams plus the two start-padded ones per case variant.
    long long expect = 0;
    for (const auto& w : builtin_wordlist()) expect += 3 * static_cast<long long>(w.size());
    CHECK(total == expect);
}

TEST_CASE("scene generation is deterministic") {
    CorpusParams params;
    Rng a(404), b(404);
    Scene sa = generate_scene(a), sb = generate_scene(b);
    CHECK(sa.image.data == sb.image.data);
    REQUIRE(sa.words.size() == sb.words.size());
    for (size_t i = 0; i < sa.words.size(); ++i) {
        CHECK(sa.words[i].text == sb.words[i].text);
        CHECK(sa.words[i].x == sb.words[i].x);
        CHECK(sa.words[i].y == sb.words[i].y);
    }
    Rng c(405);
    Scene sc = generate_scene(c);
    CHECK(sa.image.data != sc.image.data);
}

TEST_CASE("scenes respect word counts, bounds, and per-char regions") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        Rng rng(seed);
        CorpusParams params;
        Scene scene = generate_scene(rng, params);
        CHECK(scene.image.width == params.width);
        CHECK(scene.image.height == params.height);
        CHECK(int(scene.words.size()) >= params.min_words);
        CHECK(int(scene.words.size()) <= params.max_words);

        size_t expected_chars = 0;
        for (const SceneWord& w : scene.words) {
            expected_chars += w.text.size();
            CHECK(w.x >= 0);
            CHECK(w.y >= 0);
            CHECK(w.x + w.w <= params.width);
            CHECK(w.y + w.h <= params.height);
            CHECK(int(w.text.size()) >= params.min_len);
            CHECK(int(w.text.size()) <= params.max_len);
        }
        CHECK(scene.chars.size() == expected_chars);
        for (const Region& r : scene.chars) {
            CHECK(r.area > 0);
            CHECK(r.x >= 0);
            CHECK(r.y >= 0);
            CHECK(r.x + r.w <= params.width);
            CHECK(r.y + r.h <= params.height);
        }

        // Word boxes of one scene never overlap.
        for (size_t i = 0; i < scene.words.size(); ++i)
            for (size_t j = i + 1; j < scene.words.size(); ++j) {
                const SceneWord& a = scene.words[i];
                const SceneWord& b = scene.words[j];
                bool apart = a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y ||
                             b.y + b.h <= a.y;
                CHECK(apart);
            }
    }
}

TEST_CASE("noise-free scenes keep ink contrast above the floor") {
    CorpusParams params;
    params.noise_sigma = 0.0;
    params.distractor_prob = 0.0;
    for (uint64_t seed = 50; seed < 58; ++seed) {
        Rng rng(seed);
        Scene scene = generate_scene(rng, params);
        REQUIRE(!scene.chars.empty());
        auto luma = [&](int x, int y) {
            const uint8_t* p = scene.image.px(x, y);
            return 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        };
        double bg = luma(0, 0);
        for (const Region& r : scene.chars)
            for (const Pt& p : r.pixels)
                CHECK(std::abs(luma(p.x, p.y) - bg) >= double(params.min_contrast));
    }
}

TEST_CASE("char regions lie inside their word boxes") {
    Rng rng(321);
    Scene scene = generate_scene(rng);
    size_t ci = 0;
    for (const SceneWord& w : scene.words)
        for (size_t k = 0; k < w.text.size(); ++k, ++ci) {
            const Region& r = scene.chars[ci];
            CHECK(r.x >= w.x);
            CHECK(r.y >= w.y);
            CHECK(r.x + r.w <= w.x + w.w);
            CHECK(r.y + r.h <= w.y + w.h);
        }
}
