#include "stroketext/lines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace stroketext {

namespace {

struct P2 {
    double x, y;
};

P2 centroid(const Region& r) {
    double sx = 0.0, sy = 0.0;
    for (const Pt& p : r.pixels) {
        sx += p.x;
        sy += p.y;
    }
    return {sx / r.area, sy / r.area};
}

P2 bottom_center(const Region& r) {
    return {r.x + r.w / 2.0, static_cast<double>(r.y + r.h)};
}

double median_height(const std::vector<Region>& regions, const std::vector<int>& m) {
    std::vector<int> hs;
    for (int i : m) hs.push_back(regions[i].h);
    std::sort(hs.begin(), hs.end());
    size_t n = hs.size();
    return n % 2 ? hs[n / 2] : (hs[n / 2 - 1] + hs[n / 2]) / 2.0;
}

// Least squares through the member bottom-centers. Fails on a vertical
// arrangement or a slope steeper than 45 degrees.
bool fit_line(const std::vector<Region>& regions, const std::vector<int>& m,
              BottomLine& out) {
    double n = static_cast<double>(m.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i : m) {
        P2 p = bottom_center(regions[i]);
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
    }
    double denom = n * sxx - sx * sx;
    if (m.size() == 1) {
        out.slope = 0.0;
        out.intercept = sy;
    } else {
        if (std::abs(denom) < 1e-9) return false;
        out.slope = (n * sxy - sx * sy) / denom;
        out.intercept = (sy - out.slope * sx) / n;
    }
    if (std::abs(out.slope) > 1.0) return false;
    out.residual = 0.0;
    for (int i : m) {
        P2 p = bottom_center(regions[i]);
        out.residual = std::max(out.residual,
                                std::abs(p.y - (out.slope * p.x + out.intercept)));
    }
    return true;
}

bool make_line(const std::vector<Region>& regions, std::vector<int> m,
               TextLineHypothesis& out) {
    std::sort(m.begin(), m.end(), [&](int a, int b) {
        const Region &ra = regions[a], &rb = regions[b];
        if (ra.x != rb.x) return ra.x < rb.x;
        if (ra.y != rb.y) return ra.y < rb.y;
        return a < b;
    });
    if (!fit_line(regions, m, out.bottom_line)) return false;
    out.line_height = median_height(regions, m);
    if (out.bottom_line.residual > 0.25 * out.line_height) return false;
    int x0 = std::numeric_limits<int>::max(), y0 = x0, x1 = -1, y1 = -1;
    for (int i : m) {
        const Region& r = regions[i];
        x0 = std::min(x0, r.x);
        y0 = std::min(y0, r.y);
        x1 = std::max(x1, r.x + r.w);
        y1 = std::max(y1, r.y + r.h);
    }
    out.x = x0;
    out.y = y0;
    out.w = x1 - x0;
    out.h = y1 - y0;
    out.members = std::move(m);
    return true;
}

bool heights_ok(const Region& a, const Region& b) {
    return std::max(a.h, b.h) <= 2 * std::min(a.h, b.h);
}

bool overlap_ok(const Region& a, const Region& b) {
    int ov = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    return ov >= 0.3 * std::min(a.h, b.h);
}

bool triplet_ok(const std::vector<Region>& regions, int a, int b, int c) {
    const Region* rs[3] = {&regions[a], &regions[b], &regions[c]};
    std::sort(rs, rs + 3, [](const Region* u, const Region* v) {
        return std::tie(u->x, u->y, u->w, u->h) < std::tie(v->x, v->y, v->w, v->h);
    });
    int max_h = std::max({rs[0]->h, rs[1]->h, rs[2]->h});
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!heights_ok(*rs[i], *rs[j]) || !overlap_ok(*rs[i], *rs[j]))
                return false;
    for (int i = 0; i + 1 < 3; ++i) {
        int gap = rs[i + 1]->x - (rs[i]->x + rs[i]->w);
        if (gap > 3 * max_h) return false;
    }
    return true;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> u = a;
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

struct LineKey {
    double d;
    size_t count;
    int x, y, w, h;
    std::vector<int> members;

    bool operator<(const LineKey& o) const {
        if (d != o.d) return d < o.d;
        if (count != o.count) return count < o.count;
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        if (w != o.w) return w < o.w;
        if (h != o.h) return h < o.h;
        return members < o.members;
    }
};

void canonical_sort(std::vector<TextLineHypothesis>& lines) {
    std::sort(lines.begin(), lines.end(),
              [](const TextLineHypothesis& a, const TextLineHypothesis& b) {
                  if (a.x != b.x) return a.x < b.x;
                  if (a.y != b.y) return a.y < b.y;
                  if (a.w != b.w) return a.w < b.w;
                  if (a.h != b.h) return a.h < b.h;
                  return a.members < b.members;
              });
}

}  // namespace

std::vector<TextLineHypothesis> propose_triplets(const std::vector<Region>& regions,
                                                 const std::vector<RegionClass>& classes,
                                                 int k_nearest) {
    std::vector<int> chars;
    std::vector<TextLineHypothesis> out;
    for (size_t i = 0; i < regions.size(); ++i) {
        if (classes[i] == RegionClass::Character) {
            chars.push_back(static_cast<int>(i));
        } else if (classes[i] == RegionClass::MultiCharacter) {
            TextLineHypothesis h;
            if (make_line(regions, {static_cast<int>(i)}, h)) out.push_back(std::move(h));
        }
    }

    std::vector<P2> cents(regions.size());
    for (int i : chars) cents[i] = centroid(regions[i]);

    std::set<std::array<int, 3>> seen;
    for (int anchor : chars) {
        std::vector<std::pair<double, int>> near;
        for (int other : chars) {
            if (other == anchor) continue;
            double dx = cents[other].x - cents[anchor].x;
            double dy = cents[other].y - cents[anchor].y;
            near.push_back({dx * dx + dy * dy, other});
        }
        std::sort(near.begin(), near.end());
        if (static_cast<int>(near.size()) > k_nearest) near.resize(k_nearest);

        for (size_t a = 0; a < near.size(); ++a)
            for (size_t b = a + 1; b < near.size(); ++b) {
                std::array<int, 3> key = {anchor, near[a].second, near[b].second};
                std::sort(key.begin(), key.end());
                if (!seen.insert(key).second) continue;
                if (!triplet_ok(regions, key[0], key[1], key[2])) continue;
                TextLineHypothesis h;
                if (make_line(regions, {key[0], key[1], key[2]}, h))
                    out.push_back(std::move(h));
            }
    }
    canonical_sort(out);
    return out;
}

std::vector<TextLineHypothesis> agglomerate(const std::vector<Region>& regions,
                                            std::vector<TextLineHypothesis> lines,
                                            double tau_merge) {
    while (lines.size() > 1) {
        bool found = false;
        LineKey best{};
        TextLineHypothesis merged_best;
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < lines.size(); ++i)
            for (size_t j = i + 1; j < lines.size(); ++j) {
                std::vector<int> u = sorted_union(lines[i].members, lines[j].members);
                TextLineHypothesis m;
                if (!make_line(regions, u, m)) continue;
                double d = m.bottom_line.residual / m.line_height;
                if (d >= tau_merge) continue;
                LineKey key{d, m.members.size(), m.x, m.y, m.w, m.h, m.members};
                if (!found || key < best) {
                    found = true;
                    best = std::move(key);
                    merged_best = std::move(m);
                    bi = i;
                    bj = j;
                }
            }
        if (!found) break;
        lines.erase(lines.begin() + bj);
        lines.erase(lines.begin() + bi);
        lines.push_back(std::move(merged_best));
    }
    canonical_sort(lines);
    return lines;
}

std::vector<TextLineHypothesis> resolve_conflicts(
    const std::vector<TextLineHypothesis>& lines) {
    size_t n = lines.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<size_t> stack = {s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < n; ++j) {
                if (comp[j] != -1) continue;
                bool share = false;
                for (int m : lines[i].members)
                    if (std::find(lines[j].members.begin(), lines[j].members.end(), m) !=
                        lines[j].members.end()) {
                        share = true;
                        break;
                    }
                if (share) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
        }
        ++ncomp;
    }

    std::vector<int> keep(ncomp, -1);
    auto better = [&](const TextLineHypothesis& a, const TextLineHypothesis& b) {
        if (a.members.size() != b.members.size())
            return a.members.size() > b.members.size();
        if (a.bottom_line.residual != b.bottom_line.residual)
            return a.bottom_line.residual < b.bottom_line.residual;
        return std::tie(a.x, a.y, a.w, a.h, a.members) <
               std::tie(b.x, b.y, b.w, b.h, b.members);
    };
    for (size_t i = 0; i < n; ++i) {
        int c = comp[i];
        if (keep[c] == -1 || better(lines[i], lines[keep[c]]))
            keep[c] = static_cast<int>(i);
    }
    std::vector<TextLineHypothesis> out;
    for (int idx : keep) out.push_back(lines[idx]);
    canonical_sort(out);
    return out;
}

}  // namespace stroketext
