#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "stroketext/classifier.hpp"
#include "stroketext/rng.hpp"
#include "testutil.hpp"

using namespace stroketext;

namespace {

RegionFeatures toy_features(double a, double b) {
    RegionFeatures f{};
    f.stroke_area_ratio = a;
    f.aspect_ratio = b;
    f.compactness = 0.3;
    f.hull_ratio = 0.8;
    f.holes_ratio = 0.1;
    return f;
}

// three well separated clusters in the first two feature dimensions
std::vector<TrainingSample> toy_set(Rng& rng, int per_class) {
    std::vector<TrainingSample> s;
    auto add = [&](double cx, double cy, RegionClass cls) {
        for (int i = 0; i < per_class; ++i)
            s.push_back({toy_features(cx + rng.uniform(-0.05, 0.05),
                                      cy + rng.uniform(-0.05, 0.05)),
                         cls});
    };
    add(0.9, 0.5, RegionClass::Character);
    add(0.5, 3.0, RegionClass::MultiCharacter);
    add(0.2, 1.0, RegionClass::Background);
    return s;
}

Region box_region(int x, int y, int w, int h) {
    Region r;
    for (int yy = y; yy < y + h; ++yy)
        for (int xx = x; xx < x + w; ++xx) r.pixels.push_back({xx, yy});
    finalize_region(r);
    return r;
}

BinaryMask box_mask(int W, int H, int x, int y, int w, int h) {
    BinaryMask m(W, H);
    for (int yy = y; yy < y + h; ++yy)
        for (int xx = x; xx < x + w; ++xx) m.set(xx, yy, true);
    return m;
}

double dual_objective(const std::vector<FeatureVec>& x, const std::vector<int>& y,
                      const std::vector<double>& alpha, double gamma) {
    int n = static_cast<int>(x.size());
    double q = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i) {
        lin += alpha[i];
        for (int j = 0; j < n; ++j) {
            double d2 = 0.0;
            for (int d = 0; d < kFeatureDim; ++d)
                d2 += (x[i][d] - x[j][d]) * (x[i][d] - x[j][d]);
            q += alpha[i] * alpha[j] * y[i] * y[j] * std::exp(-gamma * d2);
        }
    }
    return 0.5 * q - lin;
}

}  // namespace

TEST_CASE("ground truth labeling covers the three classes and drops partial overlap") {
    std::vector<BinaryMask> gt = {box_mask(40, 20, 2, 2, 6, 10),
                                  box_mask(40, 20, 12, 2, 6, 10)};
    std::vector<Region> regs = {
        box_region(2, 2, 6, 10),    // equals the first character
        box_region(2, 2, 16, 10),   // spans both characters
        box_region(25, 5, 8, 8),    // touches nothing
        box_region(5, 2, 6, 10),    // half in, half out of one character
    };
    auto samples = label_regions(regs, gt);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0].label == RegionClass::Character);
    CHECK(samples[1].label == RegionClass::MultiCharacter);
    CHECK(samples[2].label == RegionClass::Background);

    std::vector<BinaryMask> bad = {box_mask(40, 20, 0, 0, 4, 4),
                                   box_mask(30, 20, 0, 0, 4, 4)};
    CHECK_THROWS(label_regions(regs, bad));
}

TEST_CASE("class weights follow total over three times count") {
    auto w = class_weights({121000, 14000, 1200});
    CHECK(w[0] == doctest::Approx(0.375).epsilon(1e-2));
    CHECK(w[1] == doctest::Approx(3.243).epsilon(1e-2));
    CHECK(w[2] == doctest::Approx(37.83).epsilon(1e-2));

    auto eq = class_weights({500, 500, 500});
    for (double v : eq) CHECK(v == 1.0);

    auto small = class_weights({2, 1, 1});
    CHECK(small[0] == doctest::Approx(2.0 / 3.0));
    CHECK(small[1] == doctest::Approx(4.0 / 3.0));
    CHECK(small[2] == doctest::Approx(4.0 / 3.0));

    CHECK_THROWS(class_weights({5, 0, 5}));
}

TEST_CASE("separable toy set trains to full accuracy") {
    Rng rng(42);
    auto samples = toy_set(rng, 10);
    KernelModel m = train_classifier(samples);
    for (const TrainingSample& s : samples)
        CHECK(classify_features(m, s.features).first == s.label);
}

TEST_CASE("degenerate and incomplete training sets are rejected") {
    std::vector<TrainingSample> same(9, {toy_features(0.5, 0.5), RegionClass::Character});
    same[3].label = RegionClass::MultiCharacter;
    same[6].label = RegionClass::Background;
    CHECK_THROWS(train_classifier(same));

    Rng rng(1);
    auto samples = toy_set(rng, 5);
    samples.erase(std::remove_if(samples.begin(), samples.end(),
                                 [](const TrainingSample& s) {
                                     return s.label == RegionClass::Background;
                                 }),
                  samples.end());
    CHECK_THROWS(train_classifier(samples));
}

TEST_CASE("dual solution satisfies the KKT conditions") {
    Rng rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(rng.uniform_int(0, 4));
        std::vector<FeatureVec> x(n);
        std::vector<int> y(n);
        std::vector<double> box(n);
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d < kFeatureDim; ++d) x[i][d] = rng.uniform(-1, 1);
            y[i] = rng.uniform() < 0.5 ? 1 : -1;
            box[i] = rng.uniform(0.5, 8.0);
        }
        if (std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; }))
            y[0] = -y[0];
        double gamma = 0.4;
        BinarySvm sol = smo_solve(x, y, box, gamma);

        double balance = 0.0;
        for (int i = 0; i < n; ++i) balance += sol.alpha[i] * y[i];
        CHECK(std::abs(balance) < 1e-9);

        for (int i = 0; i < n; ++i) {
            CHECK(sol.alpha[i] >= -1e-12);
            CHECK(sol.alpha[i] <= box[i] + 1e-12);
            double f = sol.bias;
            for (int j = 0; j < n; ++j) {
                double d2 = 0.0;
                for (int d = 0; d < kFeatureDim; ++d)
                    d2 += (x[i][d] - x[j][d]) * (x[i][d] - x[j][d]);
                f += sol.alpha[j] * y[j] * std::exp(-gamma * d2);
            }
            double margin = y[i] * f;
            INFO("trial " << trial << " i=" << i << " alpha=" << sol.alpha[i]
                          << " margin=" << margin);
            if (sol.alpha[i] < 1e-9)
                CHECK(margin >= 1.0 - 1e-3);
            else if (sol.alpha[i] > box[i] - 1e-9)
                CHECK(margin <= 1.0 + 1e-3);
            else
                CHECK(margin == doctest::Approx(1.0).epsilon(1e-3));
        }

        // no feasible pair move may improve the dual objective
        double base = dual_objective(x, y, sol.alpha, gamma);
        for (int probe = 0; probe < 60; ++probe) {
            int i = static_cast<int>(rng.uniform_int(0, n - 1));
            int j = static_cast<int>(rng.uniform_int(0, n - 1));
            if (i == j) continue;
            std::vector<double> a = sol.alpha;
            double lo = -a[i], hi = box[i] - a[i];
            double t = rng.uniform(lo, hi);
            double aj = a[j] - y[i] * y[j] * t;
            if (aj < 0.0 || aj > box[j]) continue;
            a[i] += t;
            a[j] = aj;
            CHECK(dual_objective(x, y, a, gamma) >= base - 1e-6);
        }
    }
}

TEST_CASE("oversampling one class shifts few held-out predictions") {
    Rng rng(11);
    auto base = toy_set(rng, 12);
    auto heavy = base;
    for (const TrainingSample& s : base)
        if (s.label == RegionClass::Background)
            for (int k = 0; k < 9; ++k) heavy.push_back(s);

    KernelModel m1 = train_classifier(base);
    KernelModel m2 = train_classifier(heavy);

    Rng hrng(77);
    auto held = toy_set(hrng, 20);
    int diff = 0;
    for (const TrainingSample& s : held)
        diff += classify_features(m1, s.features).first !=
                classify_features(m2, s.features).first;
    CHECK(diff < static_cast<int>(held.size()) / 10);
}

TEST_CASE("model io round-trips classification exactly") {
    Rng rng(3);
    auto samples = toy_set(rng, 8);
    KernelModel m = train_classifier(samples);
    std::string path = "classifier_roundtrip.json";
    save_model(m, path);
    KernelModel loaded = load_model(path);
    std::remove(path.c_str());

    Rng probe(5);
    for (int i = 0; i < 200; ++i) {
        RegionFeatures f = toy_features(probe.uniform(0, 1), probe.uniform(0, 4));
        f.compactness = probe.uniform(0, 1);
        f.hull_ratio = probe.uniform(0.1, 1);
        f.holes_ratio = probe.uniform(0, 0.9);
        auto a = classify_features(m, f);
        auto b = classify_features(loaded, f);
        CHECK(a.first == b.first);
        for (int c = 0; c < 3; ++c) CHECK(a.second[c] == b.second[c]);
    }
}

TEST_CASE("classification rejects non-finite features") {
    Rng rng(13);
    KernelModel m = train_classifier(toy_set(rng, 6));
    RegionFeatures f = toy_features(0.5, 0.5);
    f.compactness = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(classify_features(m, f));
}

TEST_CASE("tie on all scores picks the first class in fixed order") {
    KernelModel m;  // empty decision functions give identical zero scores
    for (int d = 0; d < kFeatureDim; ++d) {
        m.feature_mean[d] = 0.0;
        m.feature_scale[d] = 1.0;
    }
    auto res = classify_features(m, toy_features(0.4, 0.6));
    CHECK(res.first == RegionClass::Character);
    CHECK(res.second[0] == res.second[1]);
    CHECK(res.second[1] == res.second[2]);
}

TEST_CASE("subsampling caps the size and keeps elements from the pool") {
    Rng rng(19);
    auto samples = toy_set(rng, 30);
    Rng sub_rng(4);
    auto small = subsample(samples, 20, sub_rng);
    CHECK(small.size() == 20);
    auto all = subsample(samples, 500, sub_rng);
    CHECK(all.size() == samples.size());
}

TEST_CASE("cross validation scores a sane model highly") {
    Rng rng(23);
    auto samples = toy_set(rng, 15);
    Rng cv_rng(6);
    double acc = cross_validate(samples, 10.0, 0.2, 5, cv_rng);
    CHECK(acc >= 0.9);
}
