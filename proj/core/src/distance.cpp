#include "stroketext/distance.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace stroketext {

namespace {

constexpr double kInf = 1e20;

// 1D squared-distance transform of a sampled function (lower envelope of
// parabolas). Exact for integer-valued inputs at image scale; cells at kInf
// behave as absent parabolas because their intersections fall left of any
// query index.
void edt_1d(const std::vector<double>& f, int n, std::vector<double>& d,
            std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kInf * 2;
    z[1] = +kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
            if (s <= z[k] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = +kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        double dx = q - v[k];
        d[q] = dx * dx + f[v[k]];
    }
}

// 2D exact squared EDT; `grid` holds 0 at seed cells and kInf elsewhere.
void edt_2d(std::vector<double>& grid, int w, int h) {
    int nmax = std::max(w, h);
    std::vector<double> f(nmax), d(nmax);
    std::vector<int> v(nmax);
    std::vector<double> z(nmax + 1);

    // columns
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = grid[static_cast<size_t>(y) * w + x];
        bool any = false;
        for (int y = 0; y < h; ++y)
            if (f[y] < kInf) { any = true; break; }
        if (!any) continue;
        edt_1d(f, h, d, v, z);
        for (int y = 0; y < h; ++y) grid[static_cast<size_t>(y) * w + x] = d[y];
    }
    // rows
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = grid[static_cast<size_t>(y) * w + x];
        bool any = false;
        for (int x = 0; x < w; ++x)
            if (f[x] < kInf) { any = true; break; }
        if (!any) continue;
        edt_1d(f, w, d, v, z);
        for (int x = 0; x < w; ++x) grid[static_cast<size_t>(y) * w + x] = d[x];
    }
}

}  // namespace

DistanceMap distance_transform(const BinaryMask& mask) {
    int w = mask.width, h = mask.height;
    DistanceMap out(w, h);
    if (w == 0 || h == 0) return out;

    // pad with a one-pixel background ring so the border acts as background
    int pw = w + 2, ph = h + 2;
    std::vector<double> grid(static_cast<size_t>(pw) * ph, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            grid[static_cast<size_t>(y + 1) * pw + (x + 1)] = mask.get(x, y) ? kInf : 0.0;

    edt_2d(grid, pw, ph);

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double sq = grid[static_cast<size_t>(y + 1) * pw + (x + 1)];
            out.at(x, y) = mask.get(x, y) ? std::sqrt(sq) : 0.0;
        }
    return out;
}

DistanceMap distance_to_set(const BinaryMask& seeds, double empty_value) {
    int w = seeds.width, h = seeds.height;
    DistanceMap out(w, h);
    if (w == 0 || h == 0) return out;
    if (seeds.count() == 0) {
        for (double& v : out.values) v = empty_value;
        return out;
    }
    std::vector<double> grid(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            grid[static_cast<size_t>(y) * w + x] = seeds.get(x, y) ? 0.0 : kInf;
    edt_2d(grid, w, h);
    for (size_t i = 0; i < grid.size(); ++i) out.values[i] = std::sqrt(grid[i]);
    return out;
}

}  // namespace stroketext
