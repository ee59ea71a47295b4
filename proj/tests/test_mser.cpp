#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "stroketext/image.hpp"
#include "stroketext/mser.hpp"
#include "stroketext/rng.hpp"
#include "testutil.hpp"

using namespace stroketext;
using namespace stxtest;

namespace {

// Exhaustive-threshold reference: component sets at every level, distinct
// sets as tree nodes, then the identical stability and diversity rules.
std::set<std::vector<Pt>> oracle_msers(const GrayImage& g, const MserParams& prm) {
    const int w = g.width, h = g.height, n = w * h;

    std::vector<std::vector<std::vector<Pt>>> comps(256);
    std::vector<std::vector<int>> comp_of(256, std::vector<int>(n, -1));
    for (int l = 0; l < 256; ++l) {
        std::vector<uint8_t> seen(n, 0);
        for (int start = 0; start < n; ++start) {
            if (seen[start] || g.data[start] > l) continue;
            std::vector<Pt> comp;
            std::vector<int> todo{start};
            seen[start] = 1;
            int id = static_cast<int>(comps[l].size());
            while (!todo.empty()) {
                int p = todo.back();
                todo.pop_back();
                comp.push_back({p % w, p / w});
                comp_of[l][p] = id;
                int x = p % w;
                bool up = p - w >= 0, dn = p + w < n;
                int cands[8] = {x > 0 ? p - 1 : -1,
                                x + 1 < w ? p + 1 : -1,
                                up ? p - w : -1,
                                dn ? p + w : -1,
                                up && x > 0 ? p - w - 1 : -1,
                                up && x + 1 < w ? p - w + 1 : -1,
                                dn && x > 0 ? p + w - 1 : -1,
                                dn && x + 1 < w ? p + w + 1 : -1};
                for (int q : cands) {
                    if (q < 0 || seen[q] || g.data[q] > l) continue;
                    seen[q] = 1;
                    todo.push_back(q);
                }
            }
            std::sort(comp.begin(), comp.end());
            comps[l].push_back(std::move(comp));
        }
    }

    struct Node {
        std::vector<Pt> set;
        int level = 0;
        int parent = -1;
        double variation = 0.0;
    };
    std::vector<Node> nodes;
    std::map<std::vector<Pt>, int> index_of;
    for (int l = 0; l < 256; ++l)
        for (const auto& c : comps[l])
            if (!index_of.count(c)) {
                index_of[c] = static_cast<int>(nodes.size());
                nodes.push_back({c, l, -1, 0.0});
            }

    auto containing = [&](const Node& nd, int level) -> const std::vector<Pt>& {
        int p = nd.set[0].y * w + nd.set[0].x;
        return comps[level][comp_of[level][p]];
    };

    for (auto& nd : nodes) {
        for (int t = nd.level + 1; t < 256; ++t) {
            const auto& c = containing(nd, t);
            if (c.size() != nd.set.size()) {
                nd.parent = index_of.at(c);
                break;
            }
        }
        int t = std::min(nd.level + prm.delta, 255);
        nd.variation =
            static_cast<double>(containing(nd, t).size() - nd.set.size()) /
            nd.set.size();
    }

    std::vector<std::vector<int>> children(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parent >= 0) children[nodes[i].parent].push_back(static_cast<int>(i));

    std::vector<bool> sel(nodes.size(), false);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& nd = nodes[i];
        int area = static_cast<int>(nd.set.size());
        if (nd.variation > prm.max_variation) continue;
        if (area < prm.min_area || area > prm.max_area) continue;
        if (nd.parent >= 0 && nd.variation > nodes[nd.parent].variation) continue;
        bool minimal = true;
        for (int c : children[i])
            if (nodes[c].variation <= nd.variation) {
                minimal = false;
                break;
            }
        if (minimal) sel[i] = true;
    }

    std::vector<bool> removed(nodes.size(), false);
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!sel[i]) continue;
        double ai = static_cast<double>(nodes[i].set.size());
        for (int a = nodes[i].parent; a >= 0; a = nodes[a].parent) {
            double aa = static_cast<double>(nodes[a].set.size());
            if ((aa - ai) / aa >= prm.min_diversity) break;
            if (!sel[a]) continue;
            if (nodes[a].variation < nodes[i].variation)
                removed[i] = true;
            else
                removed[a] = true;
        }
    }

    std::set<std::vector<Pt>> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (sel[i] && !removed[i]) out.insert(nodes[i].set);
    return out;
}

std::set<std::vector<Pt>> as_sets(const std::vector<Region>& regions) {
    std::set<std::vector<Pt>> out;
    for (const Region& r : regions) out.insert(r.pixels);
    return out;
}

GrayImage random_image(Rng& rng, int w, int h, int flavor) {
    GrayImage g(w, h);
    if (flavor == 0) {
        for (auto& v : g.data) v = static_cast<uint8_t>(rng.uniform_int(0, 255));
    } else if (flavor == 1) {
        for (auto& v : g.data) v = static_cast<uint8_t>(60 * rng.uniform_int(0, 4));
    } else {
        double fx = rng.uniform(0.05, 0.4), fy = rng.uniform(0.05, 0.4);
        double px = rng.uniform(0.0, 6.28), py = rng.uniform(0.0, 6.28);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double v = 128 + 90 * std::sin(fx * x + px) * std::cos(fy * y + py) +
                           rng.uniform(-25.0, 25.0);
                g.data[static_cast<size_t>(y) * w + x] =
                    static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
            }
    }
    return g;
}

}  // namespace

TEST_CASE("constant images yield nothing") {
    for (int v : {0, 77, 255}) {
        GrayImage g(32, 32);
        std::fill(g.data.begin(), g.data.end(), static_cast<uint8_t>(v));
        CHECK(detect_msers(g, mser_defaults(32, 32), MserPolarity::DarkOnLight).empty());
        CHECK(detect_msers(g, mser_defaults(32, 32), MserPolarity::LightOnDark).empty());
    }
}

TEST_CASE("a solid dark square on white is recovered exactly") {
    GrayImage g(32, 32);
    std::fill(g.data.begin(), g.data.end(), static_cast<uint8_t>(255));
    for (int y = 10; y < 20; ++y)
        for (int x = 8; x < 18; ++x) g.data[static_cast<size_t>(y) * 32 + x] = 0;
    auto regions = detect_msers(g, mser_defaults(32, 32), MserPolarity::DarkOnLight);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].area == 100);
    CHECK(regions[0].x == 8);
    CHECK(regions[0].y == 10);
    CHECK(regions[0].w == 10);
    CHECK(regions[0].h == 10);
}

TEST_CASE("component tree agrees with the exhaustive-threshold oracle") {
    MserParams prm;
    prm.delta = 5;
    prm.min_area = 5;
    prm.max_area = 400;
    prm.max_variation = 0.8;
    prm.min_diversity = 0.3;
    Rng rng(31337);
    for (int it = 0; it < 50; ++it) {
        GrayImage g = random_image(rng, 24, 24, it % 3);
        auto got = as_sets(detect_msers(g, prm, MserPolarity::DarkOnLight));
        auto want = oracle_msers(g, prm);
        INFO("image " << it);
        CHECK(got == want);
    }
}

TEST_CASE("oracle agreement holds across parameter choices") {
    Rng rng(555);
    for (int it = 0; it < 10; ++it) {
        GrayImage g = random_image(rng, 20, 20, it % 3);
        for (MserParams prm :
             {MserParams{2, 4, 350, 1.0, 0.1}, MserParams{8, 10, 200, 0.5, 0.5},
              MserParams{5, 1, 400, 2.0, 0.0}}) {
            auto got = as_sets(detect_msers(g, prm, MserPolarity::DarkOnLight));
            auto want = oracle_msers(g, prm);
            INFO("image " << it << " delta " << prm.delta);
            CHECK(got == want);
        }
    }
}

TEST_CASE("light polarity equals dark polarity on the inverted image") {
    MserParams prm;
    prm.min_area = 5;
    prm.max_area = 300;
    Rng rng(910);
    for (int it = 0; it < 10; ++it) {
        GrayImage g = random_image(rng, 24, 24, it % 3);
        auto got = as_sets(detect_msers(g, prm, MserPolarity::LightOnDark));
        auto want = as_sets(detect_msers(invert(g), prm, MserPolarity::DarkOnLight));
        CHECK(got == want);
    }
}

TEST_CASE("every detected region is extremal and within area bounds") {
    MserParams prm;
    prm.min_area = 5;
    prm.max_area = 400;
    Rng rng(4242);
    for (int it = 0; it < 20; ++it) {
        GrayImage g = random_image(rng, 24, 24, it % 3);
        for (const Region& r : detect_msers(g, prm, MserPolarity::DarkOnLight)) {
            CHECK(r.area >= prm.min_area);
            CHECK(r.area <= prm.max_area);
            std::set<Pt> inside(r.pixels.begin(), r.pixels.end());
            int rmax = -1, omin = 256;
            for (const Pt& p : r.pixels) {
                rmax = std::max(rmax, static_cast<int>(g.at(p.x, p.y)));
                const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    int qx = p.x + dx[k], qy = p.y + dy[k];
                    if (qx < 0 || qy < 0 || qx >= g.width || qy >= g.height) continue;
                    if (!inside.count({qx, qy}))
                        omin = std::min(omin, static_cast<int>(g.at(qx, qy)));
                }
            }
            CHECK(rmax < omin);
        }
    }
}

TEST_CASE("detection is invariant to a constant intensity shift") {
    MserParams prm;
    prm.min_area = 5;
    prm.max_area = 400;
    Rng rng(808);
    for (int it = 0; it < 10; ++it) {
        GrayImage g(24, 24);
        for (auto& v : g.data) v = static_cast<uint8_t>(rng.uniform_int(30, 200));
        GrayImage shifted = g;
        for (auto& v : shifted.data) v = static_cast<uint8_t>(v + 20);
        auto a = as_sets(detect_msers(g, prm, MserPolarity::DarkOnLight));
        auto b = as_sets(detect_msers(shifted, prm, MserPolarity::DarkOnLight));
        CHECK(a == b);
    }
}
