#include "stroketext/mser.hpp"

#include <algorithm>
#include <cstdint>

namespace stroketext {

namespace {

struct TreeNode {
    int level = 0;
    int area = 0;
    int parent = -1;
    int pix_head = -1;
    int pix_tail = -1;
    double variation = 0.0;
};

}  // namespace

MserParams mser_defaults(int width, int height) {
    MserParams p;
    p.max_area = std::max(p.min_area + 1, width * height / 4);
    return p;
}

// Flood-fill component tree over increasing threshold. Each node captures a
// distinct component set right after the level at which it last changed, so
// the node list enumerates exactly the distinct extremal regions.
std::vector<Region> detect_msers(const GrayImage& img, const MserParams& params,
                                 MserPolarity polarity) {
    const int w = img.width, h = img.height;
    const int n = w * h;
    if (n <= 0) return {};

    std::vector<uint8_t> gray(img.data);
    if (polarity == MserPolarity::LightOnDark)
        for (uint8_t& v : gray) v = static_cast<uint8_t>(255 - v);

    int start[258] = {0};
    for (int i = 0; i < n; ++i) ++start[gray[i] + 2];
    for (int l = 1; l < 258; ++l) start[l] += start[l - 1];
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[start[gray[i] + 1]++] = i;

    std::vector<int> uf(n, -1);
    std::vector<int> area(n, 0);
    std::vector<int> cnode(n, -1);
    std::vector<int> pchild_head(n, -1), pchild_tail(n, -1);
    std::vector<int> ppix_head(n, -1), ppix_tail(n, -1);
    std::vector<int> pix_next(n, -1);
    std::vector<int> node_stamp(n, -1);
    std::vector<int> pend_next;
    std::vector<TreeNode> nodes;
    nodes.reserve(static_cast<size_t>(n) / 4 + 16);
    std::vector<int> dirty;

    auto find = [&](int x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };

    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (area[a] < area[b]) std::swap(a, b);
        uf[b] = a;
        area[a] += area[b];
        if (pchild_head[b] >= 0) {
            if (pchild_head[a] >= 0) {
                pend_next[pchild_tail[a]] = pchild_head[b];
                pchild_tail[a] = pchild_tail[b];
            } else {
                pchild_head[a] = pchild_head[b];
                pchild_tail[a] = pchild_tail[b];
            }
        }
        if (cnode[b] >= 0) {
            pend_next[cnode[b]] = pchild_head[a];
            pchild_head[a] = cnode[b];
            if (pchild_tail[a] < 0) pchild_tail[a] = cnode[b];
            cnode[b] = -1;
        }
        if (ppix_head[b] >= 0) {
            if (ppix_head[a] >= 0) {
                pix_next[ppix_tail[a]] = ppix_head[b];
                ppix_tail[a] = ppix_tail[b];
            } else {
                ppix_head[a] = ppix_head[b];
                ppix_tail[a] = ppix_tail[b];
            }
        }
        dirty.push_back(a);
    };

    for (int lvl = 0; lvl < 256; ++lvl) {
        for (int k = start[lvl]; k < start[lvl + 1]; ++k) {
            int p = order[k];
            uf[p] = p;
            area[p] = 1;
            cnode[p] = -1;
            pchild_head[p] = pchild_tail[p] = -1;
            ppix_head[p] = ppix_tail[p] = p;
            pix_next[p] = -1;
            dirty.push_back(p);
            const int x = p % w;
            const bool up = p - w >= 0, dn = p + w < n;
            if (x > 0 && uf[p - 1] >= 0) unite(p, p - 1);
            if (x + 1 < w && uf[p + 1] >= 0) unite(p, p + 1);
            if (up && uf[p - w] >= 0) unite(p, p - w);
            if (dn && uf[p + w] >= 0) unite(p, p + w);
            if (up && x > 0 && uf[p - w - 1] >= 0) unite(p, p - w - 1);
            if (up && x + 1 < w && uf[p - w + 1] >= 0) unite(p, p - w + 1);
            if (dn && x > 0 && uf[p + w - 1] >= 0) unite(p, p + w - 1);
            if (dn && x + 1 < w && uf[p + w + 1] >= 0) unite(p, p + w + 1);
        }
        for (int c : dirty) {
            int r = find(c);
            if (node_stamp[r] == lvl) continue;
            node_stamp[r] = lvl;
            int idx = static_cast<int>(nodes.size());
            TreeNode nd;
            nd.level = lvl;
            nd.area = area[r];
            nd.pix_head = ppix_head[r];
            nd.pix_tail = ppix_tail[r];
            nodes.push_back(nd);
            pend_next.push_back(-1);
            if (cnode[r] >= 0) nodes[cnode[r]].parent = idx;
            for (int m = pchild_head[r]; m >= 0; m = pend_next[m]) nodes[m].parent = idx;
            pchild_head[r] = pchild_tail[r] = -1;
            ppix_head[r] = ppix_tail[r] = -1;
            cnode[r] = idx;
        }
        dirty.clear();
    }

    const int nn = static_cast<int>(nodes.size());
    for (int i = 0; i < nn; ++i) {
        int t = std::min(nodes[i].level + params.delta, 255);
        int m = i;
        while (nodes[m].parent >= 0 && nodes[nodes[m].parent].level <= t) m = nodes[m].parent;
        nodes[i].variation =
            static_cast<double>(nodes[m].area - nodes[i].area) / nodes[i].area;
    }

    std::vector<int> chead(nn, -1), cnext(nn, -1);
    for (int i = 0; i < nn; ++i) {
        if (nodes[i].parent >= 0) {
            cnext[i] = chead[nodes[i].parent];
            chead[nodes[i].parent] = i;
        }
    }

    std::vector<uint8_t> sel(nn, 0);
    for (int i = 0; i < nn; ++i) {
        const TreeNode& nd = nodes[i];
        if (nd.variation > params.max_variation) continue;
        if (nd.area < params.min_area || nd.area > params.max_area) continue;
        if (nd.parent >= 0 && nd.variation > nodes[nd.parent].variation) continue;
        bool minimal = true;
        for (int c = chead[i]; c >= 0; c = cnext[c]) {
            if (nodes[c].variation <= nd.variation) {
                minimal = false;
                break;
            }
        }
        if (minimal) sel[i] = 1;
    }

    // One-shot diversity rule: every close nested pair of selected nodes
    // marks its less stable member, ties kept on the smaller region.
    std::vector<uint8_t> removed(nn, 0);
    for (int i = 0; i < nn; ++i) {
        if (!sel[i]) continue;
        for (int a = nodes[i].parent; a >= 0; a = nodes[a].parent) {
            double rel =
                static_cast<double>(nodes[a].area - nodes[i].area) / nodes[a].area;
            if (rel >= params.min_diversity) break;
            if (!sel[a]) continue;
            if (nodes[a].variation < nodes[i].variation)
                removed[i] = 1;
            else
                removed[a] = 1;
        }
    }

    std::vector<int> acc_head(nn, -1), acc_tail(nn, -1);
    std::vector<Region> out;
    for (int i = 0; i < nn; ++i) {
        int hd = nodes[i].pix_head, tl = nodes[i].pix_tail;
        for (int c = chead[i]; c >= 0; c = cnext[c]) {
            if (acc_head[c] < 0) continue;
            if (hd < 0) {
                hd = acc_head[c];
                tl = acc_tail[c];
            } else {
                pix_next[tl] = acc_head[c];
                tl = acc_tail[c];
            }
        }
        acc_head[i] = hd;
        acc_tail[i] = tl;
        if (sel[i] && !removed[i]) {
            Region r;
            r.pixels.reserve(nodes[i].area);
            for (int p = hd; p >= 0; p = pix_next[p]) r.pixels.push_back({p % w, p / w});
            finalize_region(r);
            out.push_back(std::move(r));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Region& a, const Region& b) { return a.pixels < b.pixels; });
    return out;
}

}  // namespace stroketext
