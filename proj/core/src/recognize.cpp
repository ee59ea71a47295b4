#include "stroketext/recognize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace stroketext {

namespace {

void chop_into(const Region& region, double max_aspect, std::vector<Region>& out) {
    out.push_back(region);
    if (region.h <= 0) return;
    if (double(region.w) / region.h <= 1.2 * max_aspect) return;

    int lo = region.x + std::max(1, int(std::ceil(0.2 * region.w)));
    int hi = region.x + std::min(region.w - 1, int(std::floor(0.8 * region.w)));
    if (hi < lo) return;

    std::vector<int> column(size_t(region.w), 0);
    for (const Pt& p : region.pixels) ++column[size_t(p.x - region.x)];
    int cut = lo;
    for (int c = lo + 1; c <= hi; ++c)
        if (column[size_t(c - region.x)] < column[size_t(cut - region.x)]) cut = c;

    Region left, right;
    for (const Pt& p : region.pixels) (p.x < cut ? left : right).pixels.push_back(p);
    if (left.pixels.empty() || right.pixels.empty()) return;
    finalize_region(left);
    finalize_region(right);
    chop_into(left, max_aspect, out);
    chop_into(right, max_aspect, out);
}

double median_node_width(const std::vector<CharHypothesis>& nodes) {
    std::vector<int> widths;
    widths.reserve(nodes.size());
    for (const CharHypothesis& n : nodes) widths.push_back(n.region.w);
    std::sort(widths.begin(), widths.end());
    size_t k = widths.size();
    if (k == 0) return 0.0;
    return k % 2 ? widths[k / 2] : (widths[k / 2 - 1] + widths[k / 2]) / 2.0;
}

}  // namespace

std::vector<Region> chop(const Region& region, double atlas_max_aspect) {
    std::vector<Region> out;
    chop_into(region, atlas_max_aspect, out);
    return out;
}

RecognitionGraph build_graph(std::vector<CharHypothesis> hypotheses, double gap_penalty) {
    RecognitionGraph g;
    std::sort(hypotheses.begin(), hypotheses.end(),
              [](const CharHypothesis& a, const CharHypothesis& b) {
                  return std::tie(a.region.x, a.region.w, a.region.y, a.cost, a.label) <
                         std::tie(b.region.x, b.region.w, b.region.y, b.cost, b.label);
              });
    g.nodes = std::move(hypotheses);
    size_t n = g.nodes.size();
    g.edges.assign(n, {});
    g.edge_cost.assign(n, {});
    g.from_start.assign(n, 0);
    g.to_end.assign(n, 0);
    g.start_cost.assign(n, 0.0);
    g.end_cost.assign(n, 0.0);
    g.median_width = median_node_width(g.nodes);
    if (n == 0) return g;
    const double rate = gap_penalty / std::max(1.0, g.median_width);

    int min_x = g.nodes.front().region.x;
    int max_end = 0;
    for (const CharHypothesis& node : g.nodes)
        max_end = std::max(max_end, node.region.x + node.region.w);

    for (size_t u = 0; u < n; ++u) {
        const Region& ru = g.nodes[u].region;
        int u_end = ru.x + ru.w;
        for (size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const Region& rv = g.nodes[v].region;
            if (double(rv.x) < u_end - 0.2 * ru.w) continue;
            if (double(rv.x) - u_end > 1.5 * g.median_width) continue;
            g.edges[u].push_back(int(v));
            g.edge_cost[u].push_back(rate * std::max(0, rv.x - u_end));
        }
        if (ru.x - min_x <= 1.5 * g.median_width) {
            g.from_start[u] = 1;
            g.start_cost[u] = rate * (ru.x - min_x);
        }
        if (max_end - u_end <= 1.5 * g.median_width) {
            g.to_end[u] = 1;
            g.end_cost[u] = rate * (max_end - u_end);
        }
    }
    return g;
}

namespace {

struct PathState {
    double cost = std::numeric_limits<double>::infinity();
    std::u32string text;
    int prev_node = -1;   // predecessor node, -1 for start
    int prev_state = -1;  // index into the predecessor's state list
    double step = 0.0;
};

bool better(double cost, const std::u32string& text, const PathState& s) {
    if (cost != s.cost) return cost < s.cost;
    return text < s.text;
}

}  // namespace

PathResult best_path(const RecognitionGraph& g, const LanguageModel& lm, double lambda) {
    PathResult res;
    size_t n = g.nodes.size();
    if (n == 0) return res;

    // One state per (node, predecessor); predecessors are indexed per node,
    // slot 0 reserved for the virtual start.
    std::vector<std::vector<int>> preds(n);
    std::vector<std::vector<double>> pred_cost(n);
    std::vector<std::vector<PathState>> states(n);
    for (size_t v = 0; v < n; ++v) {
        preds[v].push_back(-1);
        pred_cost[v].push_back(g.start_cost[v]);
        for (size_t u = 0; u < n; ++u)
            for (size_t e = 0; e < g.edges[u].size(); ++e)
                if (size_t(g.edges[u][e]) == v) {
                    preds[v].push_back(int(u));
                    pred_cost[v].push_back(g.edge_cost[u][e]);
                }
        states[v].resize(preds[v].size());
    }

    for (size_t v = 0; v < n; ++v) {
        char32_t cv = g.nodes[v].label;
        for (size_t pi = 0; pi < preds[v].size(); ++pi) {
            int u = preds[v][pi];
            if (u == -1) {
                if (!g.from_start[v]) continue;
                double step = g.nodes[v].cost + pred_cost[v][pi] +
                              lambda * lm.cost(cv, LanguageModel::kStart,
                                               LanguageModel::kStart);
                PathState& s = states[v][pi];
                s.cost = step;
                s.text = std::u32string{cv};
                s.step = step;
                continue;
            }
            char32_t cu = g.nodes[size_t(u)].label;
            for (size_t qi = 0; qi < preds[size_t(u)].size(); ++qi) {
                const PathState& from = states[size_t(u)][qi];
                if (!std::isfinite(from.cost)) continue;
                int t = preds[size_t(u)][qi];
                char32_t ct = t == -1 ? LanguageModel::kStart : g.nodes[size_t(t)].label;
                double step =
                    g.nodes[v].cost + pred_cost[v][pi] + lambda * lm.cost(cv, ct, cu);
                double cost = from.cost + step;
                std::u32string text = from.text + cv;
                PathState& s = states[v][pi];
                if (better(cost, text, s)) {
                    s.cost = cost;
                    s.text = std::move(text);
                    s.prev_node = u;
                    s.prev_state = int(qi);
                    s.step = step;
                }
            }
        }
    }

    int best_v = -1, best_s = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (size_t v = 0; v < n; ++v) {
        if (!g.to_end[v]) continue;
        for (size_t pi = 0; pi < states[v].size(); ++pi) {
            const PathState& s = states[v][pi];
            if (!std::isfinite(s.cost)) continue;
            double total = s.cost + g.end_cost[v];
            if (best_v == -1 || total < best_cost ||
                (total == best_cost &&
                 s.text < states[size_t(best_v)][size_t(best_s)].text)) {
                best_v = int(v);
                best_s = int(pi);
                best_cost = total;
            }
        }
    }
    if (best_v == -1) return res;

    res.found = true;
    res.cost = best_cost;
    res.text = states[size_t(best_v)][size_t(best_s)].text;
    int v = best_v, si = best_s;
    while (v != -1) {
        const PathState& s = states[size_t(v)][size_t(si)];
        res.nodes.push_back(v);
        res.step_costs.push_back(s.step);
        int pv = s.prev_node, ps = s.prev_state;
        v = pv;
        si = ps;
    }
    std::reverse(res.nodes.begin(), res.nodes.end());
    std::reverse(res.step_costs.begin(), res.step_costs.end());
    res.step_costs.back() += g.end_cost[size_t(best_v)];
    return res;
}

std::vector<WordBox> split_words(const RecognitionGraph& g, const PathResult& path) {
    std::vector<WordBox> words;
    if (!path.found || path.nodes.empty()) return words;

    std::vector<int> widths;
    for (int v : path.nodes) widths.push_back(g.nodes[size_t(v)].region.w);
    std::sort(widths.begin(), widths.end());
    size_t k = widths.size();
    double median = k % 2 ? widths[k / 2] : (widths[k / 2 - 1] + widths[k / 2]) / 2.0;

    std::vector<std::vector<size_t>> groups{{0}};
    for (size_t i = 1; i < path.nodes.size(); ++i) {
        const Region& prev = g.nodes[size_t(path.nodes[i - 1])].region;
        const Region& curr = g.nodes[size_t(path.nodes[i])].region;
        int gap = curr.x - (prev.x + prev.w);
        if (double(gap) > 0.5 * median) groups.push_back({});
        groups.back().push_back(i);
    }

    for (const auto& group : groups) {
        WordBox word;
        int x1 = 0, y1 = 0;
        bool first = true;
        for (size_t i : group) {
            const Region& r = g.nodes[size_t(path.nodes[i])].region;
            if (first) {
                word.x = r.x;
                word.y = r.y;
                x1 = r.x + r.w;
                y1 = r.y + r.h;
                first = false;
            } else {
                word.x = std::min(word.x, r.x);
                word.y = std::min(word.y, r.y);
                x1 = std::max(x1, r.x + r.w);
                y1 = std::max(y1, r.y + r.h);
            }
            word.text.push_back(path.text[i]);
            word.cost += path.step_costs[i];
        }
        word.w = x1 - word.x;
        word.h = y1 - word.y;
        words.push_back(std::move(word));
    }
    return words;
}

double box_iou(int ax, int ay, int aw, int ah, int bx, int by, int bw, int bh) {
    int ix = std::max(ax, bx), iy = std::max(ay, by);
    int ix1 = std::min(ax + aw, bx + bw), iy1 = std::min(ay + ah, by + bh);
    double inter = double(std::max(0, ix1 - ix)) * std::max(0, iy1 - iy);
    double uni = double(aw) * ah + double(bw) * bh - inter;
    return uni <= 0.0 ? 0.0 : inter / uni;
}

std::vector<WordBox> merge_scales(std::vector<WordBox> words) {
    std::sort(words.begin(), words.end(), [](const WordBox& a, const WordBox& b) {
        return std::tie(a.cost, a.x, a.y, a.w, a.h, a.text) <
               std::tie(b.cost, b.x, b.y, b.w, b.h, b.text);
    });
    std::vector<WordBox> kept;
    for (WordBox& w : words) {
        bool clear = true;
        for (const WordBox& k : kept)
            if (box_iou(w.x, w.y, w.w, w.h, k.x, k.y, k.w, k.h) >= 0.5) {
                clear = false;
                break;
            }
        if (clear) kept.push_back(std::move(w));
    }
    return kept;
}

}  // namespace stroketext
