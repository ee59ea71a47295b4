#include "stroketext/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <thread>

#include "stroketext/rng.hpp"
#include "stroketext/stroke.hpp"

namespace stroketext {

namespace {

void parallel_indexed(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(size_t(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

size_t intersection_size(const std::vector<Pt>& a, const std::vector<Pt>& b) {
    size_t n = 0, i = 0, j = 0;
    auto key = [](const Pt& p) { return std::pair<int, int>(p.y, p.x); };
    while (i < a.size() && j < b.size()) {
        if (key(a[i]) < key(b[j]))
            ++i;
        else if (key(b[j]) < key(a[i]))
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

bool near_duplicate(const Region& a, const Region& b) {
    int small = std::min(a.area, b.area), big = std::max(a.area, b.area);
    if (double(small) < 0.9 * big) return false;  // IoU <= small/big
    if (a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y || b.y + b.h <= a.y) return false;
    size_t inter = intersection_size(a.pixels, b.pixels);
    return double(inter) >= 0.9 * double(size_t(a.area) + size_t(b.area) - inter);
}

struct ScaleOutput {
    std::vector<WordBox> words;
};

int scale_back(double v, double s) { return int(std::llround(v / s)); }

// Glyphs with detached marks (the dots of i and j) come out of segmentation
// as stacked components; fold characters sharing most of their horizontal
// extent into one region before recognition.
std::vector<Region> merge_stacked(std::vector<Region> chars) {
    std::sort(chars.begin(), chars.end(),
              [](const Region& a, const Region& b) { return a.x < b.x; });
    std::vector<Region> out;
    for (Region& r : chars) {
        if (!out.empty()) {
            Region& prev = out.back();
            int ov = std::min(prev.x + prev.w, r.x + r.w) - std::max(prev.x, r.x);
            if (2 * ov >= std::min(prev.w, r.w)) {
                prev.pixels.insert(prev.pixels.end(), r.pixels.begin(), r.pixels.end());
                finalize_region(prev);
                continue;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<WordBox> process_scale(const ColorImage& full, const PipelineModels& models,
                                   const PipelineParams& params, size_t scale_idx) {
    double s = params.scales[scale_idx];
    int sw = std::max(1, int(std::llround(full.width * s)));
    int sh = std::max(1, int(std::llround(full.height * s)));
    if (std::min(sw, sh) < params.min_side) return {};
    ColorImage img = (sw == full.width && sh == full.height) ? full
                                                             : resize_bilinear(full, sw, sh);

    std::vector<Region> regions = detect_candidate_regions(img, params.mser);
    if (regions.empty()) return {};

    std::vector<RegionClass> classes;
    std::vector<Region> kept;
    for (Region& r : regions) {
        RegionClass c = classify_features(models.classifier, compute_features(r)).first;
        if (c == RegionClass::Background) continue;
        classes.push_back(c);
        kept.push_back(std::move(r));
    }
    if (kept.empty()) return {};

    std::vector<TextLineHypothesis> lines =
        resolve_conflicts(agglomerate(kept, propose_triplets(kept, classes)));

    double max_aspect = models.atlas.max_aspect();
    std::vector<WordBox> words;
    for (size_t li = 0; li < lines.size(); ++li) {
        const TextLineHypothesis& line = lines[li];
        SegmentParams seg = params.segment;
        // Keyed by scale value, not ladder position: per-scale results do not
        // depend on where the scale sits in the ladder.
        uint64_t skey;
        static_assert(sizeof(skey) == sizeof(s));
        std::memcpy(&skey, &s, sizeof(skey));
        seg.seed = Rng::substream(params.seed, skey, li);
        RefineResult refined = refine_line(img, kept, line, seg);
        if (!refined.accepted || refined.characters.empty()) continue;

        std::vector<Region> chars = merge_stacked(std::move(refined.characters));

        // The predecessor rule caps bridgeable gaps at 1.5 median widths, so
        // a line spanning a wider space can never decode in one graph; cut it
        // into independently decoded runs at those gaps.
        std::vector<int> widths;
        for (const Region& ch : chars) widths.push_back(ch.w);
        std::sort(widths.begin(), widths.end());
        double med = widths.size() % 2
                         ? widths[widths.size() / 2]
                         : (widths[widths.size() / 2 - 1] + widths[widths.size() / 2]) / 2.0;
        std::vector<std::vector<const Region*>> runs;
        int run_end = 0;
        for (const Region& ch : chars) {
            if (runs.empty() || ch.x - run_end > 1.5 * med) runs.push_back({});
            runs.back().push_back(&ch);
            run_end = std::max(run_end, ch.x + ch.w);
        }

        for (const auto& run : runs) {
            std::vector<CharHypothesis> hyps;
            for (const Region* ch : run) {
                for (const Region& piece : chop(*ch, max_aspect)) {
                    auto ranked = classify_glyph(region_mask(piece), models.atlas,
                                                 params.top_labels, params.glyph_temperature);
                    for (const auto& [label, cost] : ranked)
                        hyps.push_back({piece, label, cost});
                }
            }
            if (hyps.empty()) continue;

            RecognitionGraph graph = build_graph(hyps);
            PathResult path = best_path(graph, models.lm, params.lambda);
            if (!path.found) continue;
            for (WordBox w : split_words(graph, path)) {
                int x1 = scale_back(w.x + w.w, s), y1 = scale_back(w.y + w.h, s);
                w.x = scale_back(w.x, s);
                w.y = scale_back(w.y, s);
                w.w = std::max(1, x1 - w.x);
                w.h = std::max(1, y1 - w.y);
                words.push_back(std::move(w));
            }
        }
    }
    return words;
}

}  // namespace

std::vector<Region> detect_candidate_regions(const ColorImage& img, const MserParams& base) {
    MserParams p = base;
    if (p.max_area == MserParams().max_area)
        p.max_area = mser_defaults(img.width, img.height).max_area;

    GrayImage gray = to_gray(img);
    // Hue is meaningless on near-achromatic pixels; sensor noise there turns
    // into large random-hue blobs. Gate by chroma before detection.
    GrayImage hue = to_hue(img);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const uint8_t* px = img.px(x, y);
            int mx = std::max({px[0], px[1], px[2]});
            int mn = std::min({px[0], px[1], px[2]});
            if (mx - mn < 20) hue.at(x, y) = 0;
        }
    std::vector<Region> all;
    for (const GrayImage* channel : {&gray, &hue})
        for (MserPolarity pol : {MserPolarity::DarkOnLight, MserPolarity::LightOnDark}) {
            std::vector<Region> found = detect_msers(*channel, p, pol);
            for (Region& r : found) {
                bool dup = false;
                for (const Region& prev : all)
                    if (near_duplicate(prev, r)) {
                        dup = true;
                        break;
                    }
                if (!dup) all.push_back(std::move(r));
            }
        }
    return all;
}

std::vector<TrainingSample> collect_training_samples(const ColorImage& img,
                                                     const std::vector<BinaryMask>& gt_chars,
                                                     const MserParams& base) {
    return label_regions(detect_candidate_regions(img, base), gt_chars);
}

std::vector<WordBox> run_image(const ColorImage& img, const PipelineModels& models,
                               const PipelineParams& params) {
    std::vector<ScaleOutput> outputs(params.scales.size());
    parallel_indexed(int(params.scales.size()), params.jobs, [&](int i) {
        outputs[size_t(i)].words = process_scale(img, models, params, size_t(i));
    });
    std::vector<WordBox> pool;
    for (ScaleOutput& out : outputs)
        for (WordBox& w : out.words) pool.push_back(std::move(w));
    return merge_scales(pool);
}

}  // namespace stroketext
