#include "stroketext/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace stroketext {

namespace {

struct LocalGrid {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
    std::vector<uint8_t> cells;

    bool at(int gx, int gy) const {
        int lx = gx - x0;
        int ly = gy - y0;
        if (lx < 0 || ly < 0 || lx >= w || ly >= h) return false;
        return cells[static_cast<size_t>(ly) * w + lx] != 0;
    }
};

LocalGrid build_grid(const std::vector<Pt>& pixels) {
    LocalGrid g;
    int xmin = std::numeric_limits<int>::max(), ymin = xmin;
    int xmax = std::numeric_limits<int>::min(), ymax = xmax;
    for (const Pt& p : pixels) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    g.x0 = xmin;
    g.y0 = ymin;
    g.w = xmax - xmin + 1;
    g.h = ymax - ymin + 1;
    g.cells.assign(static_cast<size_t>(g.w) * g.h, 0);
    for (const Pt& p : pixels)
        g.cells[static_cast<size_t>(p.y - ymin) * g.w + (p.x - xmin)] = 1;
    return g;
}

long long cross(const Pt& o, const Pt& a, const Pt& b) {
    return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

// Hull over pixel-square corners. Only the corners of each row's extreme
// pixels can lie on the hull, so candidates stay linear in region height.
double corner_hull_area(const LocalGrid& g) {
    std::vector<Pt> pts;
    pts.reserve(static_cast<size_t>(g.h) * 4);
    for (int y = 0; y < g.h; ++y) {
        int mn = -1, mx = -1;
        for (int x = 0; x < g.w; ++x) {
            if (g.cells[static_cast<size_t>(y) * g.w + x]) {
                if (mn < 0) mn = x;
                mx = x;
            }
        }
        if (mn < 0) continue;
        pts.push_back({mn, y});
        pts.push_back({mx + 1, y});
        pts.push_back({mn, y + 1});
        pts.push_back({mx + 1, y + 1});
    }
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    std::vector<Pt> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);
    long long twice = 0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        twice += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
    }
    return std::abs(static_cast<double>(twice)) / 2.0;
}

int holes_in_grid(const LocalGrid& g) {
    std::vector<uint8_t> seen(g.cells.size(), 0);
    std::vector<int> stack;
    auto push_bg = [&](int x, int y) {
        size_t i = static_cast<size_t>(y) * g.w + x;
        if (!g.cells[i] && !seen[i]) {
            seen[i] = 1;
            stack.push_back(static_cast<int>(i));
        }
    };
    for (int x = 0; x < g.w; ++x) {
        push_bg(x, 0);
        push_bg(x, g.h - 1);
    }
    for (int y = 0; y < g.h; ++y) {
        push_bg(0, y);
        push_bg(g.w - 1, y);
    }
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        int x = i % g.w;
        int y = i / g.w;
        if (x > 0) push_bg(x - 1, y);
        if (x + 1 < g.w) push_bg(x + 1, y);
        if (y > 0) push_bg(x, y - 1);
        if (y + 1 < g.h) push_bg(x, y + 1);
    }
    int holes = 0;
    for (size_t i = 0; i < g.cells.size(); ++i)
        if (!g.cells[i] && !seen[i]) ++holes;
    return holes;
}

}  // namespace

RegionGeometry region_geometry(const std::vector<Pt>& pixels) {
    RegionGeometry geo;
    if (pixels.empty()) return geo;
    LocalGrid g = build_grid(pixels);
    for (const Pt& p : pixels) {
        if (!g.at(p.x - 1, p.y) || !g.at(p.x + 1, p.y) || !g.at(p.x, p.y - 1) ||
            !g.at(p.x, p.y + 1))
            ++geo.perimeter;
    }
    geo.hull_area = corner_hull_area(g);
    geo.holes_area = holes_in_grid(g);
    return geo;
}

void finalize_region(Region& r) {
    std::sort(r.pixels.begin(), r.pixels.end());
    r.pixels.erase(std::unique(r.pixels.begin(), r.pixels.end()), r.pixels.end());
    r.area = static_cast<int>(r.pixels.size());
    if (r.area == 0) {
        r.x = r.y = r.w = r.h = 0;
        r.perimeter = r.holes_area = 0;
        r.hull_area = 0.0;
        return;
    }
    int xmin = r.pixels[0].x, xmax = r.pixels[0].x;
    int ymin = r.pixels[0].y, ymax = r.pixels[0].y;
    for (const Pt& p : r.pixels) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    r.x = xmin;
    r.y = ymin;
    r.w = xmax - xmin + 1;
    r.h = ymax - ymin + 1;
    RegionGeometry geo = region_geometry(r.pixels);
    r.perimeter = geo.perimeter;
    r.hull_area = geo.hull_area;
    r.holes_area = geo.holes_area;
}

std::vector<Region> connected_components(const BinaryMask& mask, int connectivity) {
    std::vector<Region> out;
    const int w = mask.width, h = mask.height;
    if (w <= 0 || h <= 0) return out;
    std::vector<uint8_t> seen(static_cast<size_t>(w) * h, 0);
    std::vector<int> stack;
    const int dx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int nn = connectivity == 4 ? 4 : 8;
    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            size_t si = static_cast<size_t>(sy) * w + sx;
            if (!mask.get(sx, sy) || seen[si]) continue;
            Region r;
            seen[si] = 1;
            stack.push_back(static_cast<int>(si));
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                int x = i % w;
                int y = i / w;
                r.pixels.push_back({x, y});
                for (int k = 0; k < nn; ++k) {
                    int qx = x + dx8[k];
                    int qy = y + dy8[k];
                    if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                    size_t qi = static_cast<size_t>(qy) * w + qx;
                    if (mask.get(qx, qy) && !seen[qi]) {
                        seen[qi] = 1;
                        stack.push_back(static_cast<int>(qi));
                    }
                }
            }
            finalize_region(r);
            out.push_back(std::move(r));
        }
    }
    return out;
}

BinaryMask region_mask(const Region& r) {
    BinaryMask m(r.w, r.h);
    for (const Pt& p : r.pixels) m.set(p.x - r.x, p.y - r.y, true);
    return m;
}

}  // namespace stroketext
