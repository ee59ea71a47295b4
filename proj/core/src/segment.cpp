#include "stroketext/segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stroketext/distance.hpp"
#include "stroketext/maxflow.hpp"
#include "stroketext/rng.hpp"
#include "stroketext/stroke.hpp"

namespace stroketext {

namespace {

// Unordered 8-neighborhood offsets; each adjacent pair is visited once.
constexpr int kPairDx[4] = {1, 0, 1, -1};
constexpr int kPairDy[4] = {0, 1, 1, 1};

double color_dist2(const ColorImage& img, int ax, int ay, int bx, int by) {
    const uint8_t* a = img.px(ax, ay);
    const uint8_t* b = img.px(bx, by);
    double d0 = double(a[0]) - b[0];
    double d1 = double(a[1]) - b[1];
    double d2 = double(a[2]) - b[2];
    return d0 * d0 + d1 * d1 + d2 * d2;
}

double roi_beta(const TriStateLabelMap& m, const ColorImage& img) {
    double sum = 0.0;
    size_t n = 0;
    for (int ly = 0; ly < m.h; ++ly)
        for (int lx = 0; lx < m.w; ++lx)
            for (int k = 0; k < 4; ++k) {
                int nx = lx + kPairDx[k], ny = ly + kPairDy[k];
                if (nx < 0 || nx >= m.w || ny >= m.h) continue;
                sum += color_dist2(img, m.x0 + lx, m.y0 + ly, m.x0 + nx, m.y0 + ny);
                ++n;
            }
    if (n == 0 || sum <= 0.0) return 0.0;
    return 1.0 / (2.0 * sum / double(n));
}

Rgb pixel_color(const ColorImage& img, int x, int y) {
    const uint8_t* p = img.px(x, y);
    return Rgb{double(p[0]), double(p[1]), double(p[2])};
}

}  // namespace

double gibbs_energy(const TriStateLabelMap& labels, const Gmm& fg_model, const Gmm& bg_model,
                    const ColorImage& img, double gamma_s) {
    double beta = roi_beta(labels, img);
    double u = 0.0, v = 0.0;
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx) {
            int x = labels.x0 + lx, y = labels.y0 + ly;
            TriLabel l = labels.label(lx, ly);
            if (l != TriLabel::Ignored) {
                const Gmm& model = (l == TriLabel::Background) ? bg_model : fg_model;
                u -= model.log_pdf(pixel_color(img, x, y));
            }
            for (int k = 0; k < 4; ++k) {
                int nx = lx + kPairDx[k], ny = ly + kPairDy[k];
                if (nx < 0 || nx >= labels.w || ny >= labels.h) continue;
                if (labels.foreground(lx, ly) == labels.foreground(nx, ny)) continue;
                v += gamma_s *
                     std::exp(-beta * color_dist2(img, x, y, labels.x0 + nx, labels.y0 + ny));
            }
        }
    return u + v;
}

TriStateLabelMap cut_labels(const ColorImage& img, const TriStateLabelMap& labels,
                            const Gmm& fg_model, const Gmm& bg_model, double gamma_s) {
    double beta = roi_beta(labels, img);
    FlowNetwork net(labels.w * labels.h);
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx)
            for (int k = 0; k < 4; ++k) {
                int nx = lx + kPairDx[k], ny = ly + kPairDy[k];
                if (nx < 0 || nx >= labels.w || ny >= labels.h) continue;
                double cap = gamma_s * std::exp(-beta * color_dist2(img, labels.x0 + lx,
                                                                    labels.y0 + ly, labels.x0 + nx,
                                                                    labels.y0 + ny));
                net.add_edge(int(labels.idx(lx, ly)), int(labels.idx(nx, ny)), cap, cap);
            }
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx) {
            TriLabel l = labels.label(lx, ly);
            if (l != TriLabel::ProbableForeground && l != TriLabel::Background) continue;
            Rgb z = pixel_color(img, labels.x0 + lx, labels.y0 + ly);
            double to_src = -bg_model.log_pdf(z);
            double to_snk = -fg_model.log_pdf(z);
            // Log densities can exceed 0; shift both links together so
            // capacities stay nonnegative without moving the cut.
            double shift = std::min({to_src, to_snk, 0.0});
            net.add_terminal(int(labels.idx(lx, ly)), to_src - shift, to_snk - shift);
        }
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx) {
            if (labels.label(lx, ly) != TriLabel::DefiniteForeground) continue;
            int node = int(labels.idx(lx, ly));
            net.add_terminal(node, 1.0 + net.incident_capacity(node), 0.0);
        }
    net.solve();

    TriStateLabelMap out = labels;
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx) {
            bool src = net.source_side(int(labels.idx(lx, ly)));
            switch (labels.label(lx, ly)) {
                case TriLabel::DefiniteForeground:
                    break;
                case TriLabel::Ignored:
                    out.fg[out.idx(lx, ly)] = src ? 1 : 0;
                    break;
                default:
                    out.set(lx, ly, src ? TriLabel::ProbableForeground : TriLabel::Background);
            }
        }
    return out;
}

namespace {

std::vector<Rgb> sampled_colors(const ColorImage& img, const std::vector<Pt>& pts,
                                size_t max_count) {
    std::vector<Rgb> out;
    if (pts.size() <= max_count) {
        out.reserve(pts.size());
        for (const Pt& p : pts) out.push_back(pixel_color(img, p.x, p.y));
        return out;
    }
    out.reserve(max_count);
    double step = double(pts.size()) / double(max_count);
    for (size_t i = 0; i < max_count; ++i) {
        const Pt& p = pts[size_t(i * step)];
        out.push_back(pixel_color(img, p.x, p.y));
    }
    return out;
}

TriStateLabelMap fold_definite(TriStateLabelMap m) {
    for (size_t i = 0; i < m.labels.size(); ++i)
        if (m.labels[i] == TriLabel::DefiniteForeground)
            m.labels[i] = TriLabel::ProbableForeground;
    return m;
}

}  // namespace

RefineResult refine_line(const ColorImage& img, const std::vector<Region>& regions,
                         const TextLineHypothesis& line, const SegmentParams& params) {
    if (line.members.empty()) throw std::invalid_argument("refine_line: empty line");
    double width_sum = 0.0;
    for (int m : line.members) {
        if (m < 0 || size_t(m) >= regions.size())
            throw std::out_of_range("refine_line: member index");
        width_sum += regions[m].w;
    }
    int gh = int(std::lround(width_sum / double(line.members.size())));

    RefineResult res;

    // State between iterations: prior PF pixels plus persisting ignored
    // pixels, both in image coordinates.
    std::vector<Pt> pf;
    struct IgnoredPx {
        Pt p;
        uint8_t fg;
    };
    std::vector<IgnoredPx> ignored;
    {
        BinaryMask seen(img.width, img.height);
        for (int m : line.members)
            for (const Pt& p : regions[m].pixels)
                if (img.in_bounds(p.x, p.y) && !seen.get(p.x, p.y)) {
                    seen.set(p.x, p.y);
                    pf.push_back(p);
                }
    }

    TriStateLabelMap state;
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        if (pf.empty()) return res;
        int x0 = img.width, y0 = img.height, x1 = -1, y1 = -1;
        for (const Pt& p : pf) {
            x0 = std::min(x0, p.x);
            y0 = std::min(y0, p.y);
            x1 = std::max(x1, p.x);
            y1 = std::max(y1, p.y);
        }
        int gv = int(std::lround((y1 - y0 + 1) / 3.0));
        x0 = std::max(0, x0 - gh);
        x1 = std::min(img.width - 1, x1 + gh);
        y0 = std::max(0, y0 - gv);
        y1 = std::min(img.height - 1, y1 + gv);
        if (x1 < x0 || y1 < y0) return res;

        TriStateLabelMap cur;
        cur.x0 = x0;
        cur.y0 = y0;
        cur.w = x1 - x0 + 1;
        cur.h = y1 - y0 + 1;
        cur.labels.assign(size_t(cur.w) * cur.h, TriLabel::Background);
        cur.fg.assign(size_t(cur.w) * cur.h, 0);
        for (const IgnoredPx& ip : ignored) {
            int lx = ip.p.x - x0, ly = ip.p.y - y0;
            if (lx < 0 || lx >= cur.w || ly < 0 || ly >= cur.h) continue;
            cur.labels[cur.idx(lx, ly)] = TriLabel::Ignored;
            cur.fg[cur.idx(lx, ly)] = ip.fg;
        }
        for (const Pt& p : pf) cur.set(p.x - x0, p.y - y0, TriLabel::ProbableForeground);

        // Drop PF components that left the bottom-line band or grew into the
        // roi border before they can bias the models.
        {
            BinaryMask pfm(cur.w, cur.h);
            for (const Pt& p : pf) pfm.set(p.x - x0, p.y - y0);
            for (const Region& comp : connected_components(pfm, 8)) {
                bool at_border = comp.x == 0 || comp.y == 0 || comp.x + comp.w == cur.w ||
                                 comp.y + comp.h == cur.h;
                double bx = x0 + comp.x + comp.w / 2.0;
                double by = y0 + comp.y + comp.h;
                double dev = std::abs(by - (line.bottom_line.slope * bx + line.bottom_line.intercept));
                if (!at_border && dev <= params.band_fraction * line.line_height) continue;
                for (const Pt& p : comp.pixels) {
                    cur.labels[cur.idx(p.x, p.y)] = TriLabel::Ignored;
                    cur.fg[cur.idx(p.x, p.y)] = 1;
                }
            }
        }

        Region pf_region;
        for (int ly = 0; ly < cur.h; ++ly)
            for (int lx = 0; lx < cur.w; ++lx)
                if (cur.label(lx, ly) == TriLabel::ProbableForeground)
                    pf_region.pixels.push_back({x0 + lx, y0 + ly});
        if (pf_region.pixels.empty()) return res;
        finalize_region(pf_region);
        DistanceMap dmap = distance_transform(region_mask(pf_region));
        std::vector<Pt> df;
        for (const StrokeSupportPixel& s : stroke_support_pixels(pf_region, dmap))
            df.push_back({s.x, s.y});
        if (df.empty()) return res;
        for (const Pt& p : df) cur.set(p.x - x0, p.y - y0, TriLabel::DefiniteForeground);

        std::vector<Pt> bg;
        for (int ly = 0; ly < cur.h; ++ly)
            for (int lx = 0; lx < cur.w; ++lx)
                if (cur.label(lx, ly) == TriLabel::Background) bg.push_back({x0 + lx, y0 + ly});
        if (bg.empty()) return res;

        Rng rng(Rng::substream(params.seed, uint64_t(iter)));
        Gmm fg_model =
            fit_gmm(sampled_colors(img, df, params.max_fit_pixels), params.gmm_components, rng)
                .model;
        Gmm bg_model =
            fit_gmm(sampled_colors(img, bg, params.max_fit_pixels), params.gmm_components, rng)
                .model;

        double before = gibbs_energy(cur, fg_model, bg_model, img, params.gamma_s);
        TriStateLabelMap next = cut_labels(img, cur, fg_model, bg_model, params.gamma_s);
        double after = gibbs_energy(next, fg_model, bg_model, img, params.gamma_s);
        res.energies.push_back({before, after});
        res.iterations = iter + 1;

        size_t nf = 0, nb = 0;
        for (TriLabel l : next.labels) {
            if (l == TriLabel::Background) ++nb;
            if (l != TriLabel::Background && l != TriLabel::Ignored) ++nf;
        }
        if (nf == 0 || nb == 0) return res;

        TriStateLabelMap folded = fold_definite(std::move(next));
        pf.clear();
        ignored.clear();
        for (int ly = 0; ly < folded.h; ++ly)
            for (int lx = 0; lx < folded.w; ++lx) {
                Pt p{folded.x0 + lx, folded.y0 + ly};
                if (folded.label(lx, ly) == TriLabel::ProbableForeground) pf.push_back(p);
                if (folded.label(lx, ly) == TriLabel::Ignored)
                    ignored.push_back({p, folded.fg[folded.idx(lx, ly)]});
            }
        bool fixed = (iter > 0 && folded == state);
        state = std::move(folded);
        if (fixed) break;
    }

    BinaryMask final_mask(img.width, img.height);
    for (const Pt& p : pf) final_mask.set(p.x, p.y);
    res.characters = connected_components(final_mask, 8);
    res.final_labels = std::move(state);
    res.accepted = true;
    return res;
}

ColorImage label_overlay(const ColorImage& img, const TriStateLabelMap& labels) {
    static constexpr uint8_t kPalette[4][3] = {
        {0, 255, 0}, {0, 0, 255}, {255, 0, 0}, {255, 255, 0}};
    ColorImage out = img;
    for (int ly = 0; ly < labels.h; ++ly)
        for (int lx = 0; lx < labels.w; ++lx) {
            int x = labels.x0 + lx, y = labels.y0 + ly;
            if (!out.in_bounds(x, y)) continue;
            const uint8_t* c = kPalette[int(labels.label(lx, ly))];
            uint8_t* p = out.px(x, y);
            for (int ch = 0; ch < 3; ++ch) p[ch] = uint8_t((p[ch] + c[ch]) / 2);
        }
    return out;
}

}  // namespace stroketext
