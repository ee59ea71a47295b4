#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "stroketext/distance.hpp"
#include "stroketext/regions.hpp"
#include "stroketext/rng.hpp"
#include "stroketext/stroke.hpp"
#include "testutil.hpp"

using namespace stroketext;
using namespace stxtest;

namespace {

std::vector<StrokeSupportPixel> uniform_ssps(int count, double d, int neighbors) {
    std::vector<StrokeSupportPixel> v(count);
    for (auto& s : v) {
        s.d = d;
        s.neighbor_count = neighbors;
        s.weight = 3.0 / neighbors;
    }
    return v;
}

double mask_ratio(const BinaryMask& m) { return stroke_area_ratio(region_of(m)); }

}  // namespace

TEST_CASE("ideal stroke area arithmetic, odd and even width") {
    // 9 axis pixels at distance 3.82, one per 3x3 window column
    StrokeArea a = stroke_area(uniform_ssps(9, 3.82, 3));
    CHECK(a.weighted == doctest::Approx(68.76).epsilon(1e-6));
    CHECK(std::abs(std::min(a.weighted / 70.0, 1.0) - 0.98) < 1e-2);

    // doubled axis of an even-width stroke, six support pixels per window
    StrokeArea b = stroke_area(uniform_ssps(18, 3.82, 6));
    CHECK(b.weighted == doctest::Approx(68.76).epsilon(1e-6));
    CHECK(std::abs(std::min(b.weighted / 80.0, 1.0) - 0.86) < 1e-2);

    // curved-stroke figures: area estimate 180.24 over 187 actual pixels
    CHECK(std::abs(std::min(180.24 / 187.0, 1.0) - 0.96) < 1e-2);

    CHECK(stroke_area({}).weighted == 0.0);
    CHECK(stroke_area({}).unweighted == 0.0);
}

TEST_CASE("weighted estimate reduces to the plain one at three neighbors") {
    Rng rng(5);
    std::vector<StrokeSupportPixel> v;
    for (int i = 0; i < 40; ++i) {
        StrokeSupportPixel s;
        s.d = rng.uniform(0.5, 9.0);
        s.neighbor_count = 3;
        s.weight = 1.0;
        v.push_back(s);
    }
    StrokeArea a = stroke_area(v);
    CHECK(a.weighted == doctest::Approx(a.unweighted).epsilon(1e-12));
}

TEST_CASE("support pixels of a 3-wide bar are its middle row") {
    Region r = region_of(mask_from_art({
        "############",
        "############",
        "############",
    }));
    DistanceMap d = distance_transform(region_mask(r));
    auto ssps = stroke_support_pixels(r, d);
    std::set<Pt> got;
    for (const auto& s : ssps) got.insert({s.x, s.y});
    // end pixels sit nearer the caps, so the axis row loses its outermost two
    std::set<Pt> want;
    for (int x = 1; x <= 10; ++x) want.insert({x, 1});
    CHECK(got == want);
    for (const auto& s : ssps) {
        if (s.x >= 2 && s.x <= 9) {
            CHECK(s.neighbor_count == 3);
            CHECK(s.weight == doctest::Approx(1.0));
        }
        CHECK(s.d == doctest::Approx(2.0));
    }
}

TEST_CASE("support pixels of a 4-wide bar form two rows at weight one half") {
    std::vector<std::string> art(4, std::string(20, '#'));
    Region r = region_of(mask_from_art(art));
    DistanceMap d = distance_transform(region_mask(r));
    auto ssps = stroke_support_pixels(r, d);
    std::set<int> rows;
    for (const auto& s : ssps) rows.insert(s.y);
    CHECK(rows == std::set<int>{1, 2});
    int interior = 0;
    for (const auto& s : ssps)
        if (s.x >= 2 && s.x <= 17) {
            ++interior;
            CHECK(s.neighbor_count == 6);
            CHECK(s.weight == doctest::Approx(0.5));
        }
    CHECK(interior == 32);
}

TEST_CASE("an isolated pixel is its own support pixel") {
    Region r = region_of(mask_from_art({"#"}));
    DistanceMap d = distance_transform(region_mask(r));
    auto ssps = stroke_support_pixels(r, d);
    REQUIRE(ssps.size() == 1);
    CHECK(ssps[0].neighbor_count == 1);
    CHECK(ssps[0].weight == doctest::Approx(3.0));
    CHECK(ssps[0].d == doctest::Approx(1.0));
}

TEST_CASE("strokes score high, compact shapes score low") {
    for (int w = 2; w <= 9; ++w) {
        for (double ang : {0.0, 30.0, 45.0, 60.0, 90.0}) {
            double sc = mask_ratio(rasterize_stroke(w, ang, 25.0 * w));
            INFO("straight w=" << w << " ang=" << ang << " ratio=" << sc);
            CHECK(sc >= 0.8);
            double scurve = mask_ratio(rasterize_s_stroke(w, ang, 14.0 * w));
            INFO("s-curve w=" << w << " ang=" << ang << " ratio=" << scurve);
            CHECK(scurve >= 0.8);
        }
    }
    for (double r : {8.0, 12.0, 16.0, 20.0, 24.0, 28.0, 32.0}) {
        double sc = mask_ratio(rasterize_disk(r));
        INFO("disk r=" << r << " ratio=" << sc);
        CHECK(sc <= 0.6);
    }
    Rng rng(2024);
    for (int it = 0; it < 50; ++it) {
        double sc = mask_ratio(random_convex_blob(rng));
        INFO("blob " << it << " ratio=" << sc);
        CHECK(sc <= 0.6);
    }
}

TEST_CASE("ratio is exactly invariant to translation and quarter turns") {
    for (double ang : {0.0, 30.0}) {
        BinaryMask m = rasterize_stroke(5, ang, 50);
        double base = mask_ratio(m);
        CHECK(mask_ratio(translate(m, 3, 7, 12)) == base);
        BinaryMask r = m;
        for (int k = 0; k < 3; ++k) {
            r = rot90(r);
            CHECK(mask_ratio(r) == base);
        }
    }
}

TEST_CASE("ratio is stable under rescaling and arbitrary rotation") {
    for (int w : {3, 4}) {
        double base = mask_ratio(rasterize_stroke(w, 0.0, 20.0 * w));
        for (int k = 2; k <= 4; ++k) {
            double scaled = mask_ratio(rasterize_stroke(k * w, 0.0, 20.0 * k * w));
            INFO("w=" << w << " k=" << k);
            CHECK(std::abs(scaled - base) <= 0.05);
        }
    }
    // Exact distances on the pixel lattice thin out the ridge at shallow
    // angles for wide strokes, so the tight rotation bound is a thin-stroke
    // property; the fixed-angle sweep above covers the wide ones.
    double ref = mask_ratio(rasterize_stroke(2, 0.0, 60));
    for (double ang : {10.0, 20.0, 37.0, 43.0, 52.0, 71.0, 83.0}) {
        double rot = mask_ratio(rasterize_stroke(2, ang, 60));
        INFO("ang=" << ang);
        CHECK(std::abs(rot - ref) < 0.1);
    }
}

TEST_CASE("deleting one boundary pixel barely moves the ratio") {
    BinaryMask m = rasterize_stroke(4, 0.0, 50);
    Region r = region_of(m);
    REQUIRE(r.area >= 200);
    double base = stroke_area_ratio(r);
    int checked = 0;
    for (const Pt& p : r.pixels) {
        bool boundary = !m.get(p.x - 1, p.y) || !m.get(p.x + 1, p.y) ||
                        !m.get(p.x, p.y - 1) || !m.get(p.x, p.y + 1);
        if (!boundary) continue;
        if (++checked > 12) break;
        BinaryMask cut = m;
        cut.set(p.x, p.y, false);
        Region rc = region_of(cut);
        if (rc.area != r.area - 1) continue;  // deletion split the region
        CHECK(std::abs(stroke_area_ratio(rc) - base) < 0.05);
    }
    CHECK(checked > 0);
}

TEST_CASE("feature vector closed forms") {
    Region sq = region_of(mask_from_art({
        "####",
        "####",
        "####",
        "####",
    }));
    RegionFeatures f = compute_features(sq);
    CHECK(f.aspect_ratio == doctest::Approx(1.0));
    CHECK(f.compactness == doctest::Approx(4.0 / 12.0));
    CHECK(f.hull_ratio == doctest::Approx(1.0));
    CHECK(f.holes_ratio == doctest::Approx(0.0));

    Region ring = region_of(mask_from_art({
        "#####",
        "#...#",
        "#...#",
        "#...#",
        "#####",
    }));
    RegionFeatures g = compute_features(ring);
    CHECK(g.holes_ratio == doctest::Approx(9.0 / 25.0));
    CHECK(g.hull_ratio == doctest::Approx(16.0 / 25.0));

    std::vector<std::string> bar(20, "###");
    RegionFeatures l = compute_features(region_of(mask_from_art(bar)));
    CHECK(l.aspect_ratio < 0.5);
    CHECK(l.stroke_area_ratio >= 0.9);
}
