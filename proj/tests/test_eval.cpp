#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

#include "stroketext/evalmetrics.hpp"
#include "stroketext/rng.hpp"

using namespace stroketext;

namespace {

WordBox det(int x, int y, int w, int h, std::u32string text = U"") {
    return {x, y, w, h, std::move(text), 0.0};
}

GroundTruthWord gt(int x, int y, int w, int h, std::u32string text = U"w", bool ignore = false) {
    GroundTruthWord g;
    g.x = x;
    g.y = y;
    g.w = w;
    g.h = h;
    g.transcription = std::move(text);
    g.ignore = ignore;
    return g;
}

// Maximum one-to-one matching size over the IoU >= thr bipartite graph,
// by bitmask DP over ground-truth subsets.
int optimal_matches(const std::vector<WordBox>& dets, const std::vector<GroundTruthWord>& gts,
                    double thr) {
    size_t m = gts.size();
    std::vector<int> dp(size_t(1) << m, 0);
    for (const WordBox& d : dets) {
        std::vector<int> next = dp;
        for (size_t mask = 0; mask < dp.size(); ++mask)
            for (size_t g = 0; g < m; ++g) {
                if (mask & (size_t(1) << g)) continue;
                if (box_iou(d.x, d.y, d.w, d.h, gts[g].x, gts[g].y, gts[g].w, gts[g].h) < thr)
                    continue;
                size_t with = mask | (size_t(1) << g);
                next[with] = std::max(next[with], dp[mask] + 1);
            }
        dp = next;
    }
    return *std::max_element(dp.begin(), dp.end());
}

}  // namespace

TEST_CASE("perfect detections score all ones") {
    std::vector<GroundTruthWord> gts = {gt(10, 10, 30, 12), gt(60, 40, 25, 10)};
    std::vector<WordBox> dets = {det(10, 10, 30, 12), det(60, 40, 25, 10)};
    LocalizationScore s = match_localization(dets, gts, 0.5);
    CHECK(s.recall == 1.0);
    CHECK(s.precision == 1.0);
    CHECK(s.f == 1.0);
    CHECK(s.matches == 2);
}

TEST_CASE("edge cases follow the stated conventions") {
    std::vector<GroundTruthWord> gts = {gt(10, 10, 30, 12)};
    LocalizationScore s = match_localization({}, gts, 0.5);
    CHECK(s.recall == 0.0);
    CHECK(s.precision == 0.0);
    CHECK(s.f == 0.0);

    s = match_localization({}, {}, 0.5);
    CHECK(s.recall == 1.0);
    CHECK(s.precision == 1.0);

    s = match_localization({det(0, 0, 10, 10)}, {}, 0.5);
    CHECK(s.recall == 1.0);
    CHECK(s.precision == 0.0);

    CHECK_THROWS_AS(match_localization({}, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(match_localization({}, {}, 1.0), std::invalid_argument);
}

TEST_CASE("ignored ground truth neither counts nor penalizes") {
    std::vector<GroundTruthWord> gts = {gt(10, 10, 30, 12, U"", true), gt(60, 40, 25, 10)};
    // One detection on the ignored word, the real word missed.
    LocalizationScore s = match_localization({det(10, 10, 30, 12)}, gts, 0.5);
    CHECK(s.gt_counted == 1);
    CHECK(s.det_counted == 0);
    CHECK(s.matches == 0);
    CHECK(s.recall == 0.0);
    CHECK(s.precision == 0.0);

    // Both words hit: the ignored match leaves precision at 1.
    s = match_localization({det(10, 10, 30, 12), det(60, 40, 25, 10)}, gts, 0.5);
    CHECK(s.matches == 1);
    CHECK(s.det_counted == 1);
    CHECK(s.recall == 1.0);
    CHECK(s.precision == 1.0);
}

TEST_CASE("a detection can satisfy only one ground truth word") {
    std::vector<GroundTruthWord> gts = {gt(0, 0, 20, 10), gt(4, 0, 20, 10)};
    LocalizationScore s = match_localization({det(2, 0, 20, 10)}, gts, 0.3);
    CHECK(s.matches == 1);
    CHECK(s.recall == 0.5);
    CHECK(s.precision == 1.0);
}

TEST_CASE("greedy matching tracks the optimal assignment within one match") {
    for (uint64_t trial = 0; trial < 200; ++trial) {
        Rng rng(3000 + trial);
        auto rand_box = [&](auto make) {
            return make(int(rng.uniform_int(0, 40)), int(rng.uniform_int(0, 40)),
                        int(rng.uniform_int(5, 18)), int(rng.uniform_int(5, 18)));
        };
        std::vector<WordBox> dets;
        std::vector<GroundTruthWord> gts;
        int nd = int(rng.uniform_int(0, 8)), ng = int(rng.uniform_int(0, 8));
        for (int i = 0; i < nd; ++i)
            dets.push_back(rand_box([](int x, int y, int w, int h) { return det(x, y, w, h); }));
        for (int i = 0; i < ng; ++i)
            gts.push_back(rand_box([](int x, int y, int w, int h) { return gt(x, y, w, h); }));

        LocalizationScore s = match_localization(dets, gts, 0.3);
        int best = optimal_matches(dets, gts, 0.3);
        CHECK(s.matches <= best);
        CHECK(s.matches >= best - 1);

        CHECK(s.recall >= 0.0);
        CHECK(s.recall <= 1.0);
        CHECK(s.precision >= 0.0);
        CHECK(s.precision <= 1.0);
        CHECK(s.f >= 0.0);
        CHECK(s.f <= std::min(2.0 * s.recall, 2.0 * s.precision));

        // Permutation of either list leaves the scores unchanged.
        std::vector<WordBox> dets2 = dets;
        std::vector<GroundTruthWord> gts2 = gts;
        for (size_t i = dets2.size(); i > 1; --i)
            std::swap(dets2[i - 1], dets2[size_t(rng.uniform_int(0, int64_t(i) - 1))]);
        for (size_t i = gts2.size(); i > 1; --i)
            std::swap(gts2[i - 1], gts2[size_t(rng.uniform_int(0, int64_t(i) - 1))]);
        LocalizationScore s2 = match_localization(dets2, gts2, 0.3);
        CHECK(s2.matches == s.matches);
        CHECK(s2.recall == s.recall);
        CHECK(s2.precision == s.precision);
        CHECK(s2.f == s.f);
    }
}

TEST_CASE("end to end requires exact case-sensitive text on a matched box") {
    std::vector<GroundTruthWord> gts = {gt(10, 10, 40, 14, U"TAXI")};
    EndToEndScore s = match_end_to_end({det(11, 10, 40, 14, U"TAXI")}, gts);
    CHECK(s.correct == 1);
    CHECK(s.total_gt == 1);
    CHECK(s.hallucinated == 0);
    CHECK(s.accuracy == 1.0);

    s = match_end_to_end({det(11, 10, 40, 14, U"taxi")}, gts);
    CHECK(s.correct == 0);

    // Right text, box far off: not correct, and counted hallucinated.
    s = match_end_to_end({det(200, 200, 40, 14, U"TAXI")}, gts);
    CHECK(s.correct == 0);
    CHECK(s.hallucinated == 1);

    // Grazing an ignored region is not a hallucination.
    std::vector<GroundTruthWord> with_ignore = {gt(10, 10, 40, 14, U"TAXI"),
                                                gt(200, 200, 40, 14, U"", true)};
    s = match_end_to_end({det(205, 203, 30, 10, U"zz")}, with_ignore);
    CHECK(s.correct == 0);
    CHECK(s.total_gt == 1);
    CHECK(s.hallucinated == 0);
}

TEST_CASE("ground truth files round trip and reject garbage") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "stx_gt_test.txt";

    std::vector<GroundTruthWord> gts = {gt(1, 2, 30, 10, U"Taxi"), gt(5, 50, 22, 9, U"", true),
                                        gt(7, 80, 40, 12, U"a,b c")};
    save_ground_truth(gts, path.string());
    auto loaded = load_ground_truth(path.string());
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0].x == 1);
    CHECK(loaded[0].transcription == U"Taxi");
    CHECK(loaded[0].ignore == false);
    CHECK(loaded[1].ignore == true);
    CHECK(loaded[1].transcription.empty());
    CHECK(loaded[2].transcription == U"a,b c");

    std::ofstream(path) << "1,2,3\n";
    CHECK_THROWS_AS(load_ground_truth(path.string()), std::runtime_error);
    std::ofstream(path) << "1,2,3,4,unquoted\n";
    CHECK_THROWS_AS(load_ground_truth(path.string()), std::runtime_error);
    CHECK_THROWS_AS(load_ground_truth((fs::temp_directory_path() / "stx_nope").string()),
                    std::runtime_error);
    fs::remove(path);
}
