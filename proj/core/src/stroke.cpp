#include "stroketext/stroke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace stroketext {

std::vector<StrokeSupportPixel> stroke_support_pixels(const Region& region,
                                                      const DistanceMap& dmap) {
    const int w = region.w, h = region.h;
    std::vector<uint8_t> in(static_cast<size_t>(w) * h, 0);
    for (const Pt& p : region.pixels)
        in[static_cast<size_t>(p.y - region.y) * w + (p.x - region.x)] = 1;

    auto inside = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h && in[static_cast<size_t>(y) * w + x];
    };

    std::vector<uint8_t> is_ssp(in.size(), 0);
    for (const Pt& p : region.pixels) {
        int lx = p.x - region.x, ly = p.y - region.y;
        double di = dmap.at(lx, ly);
        bool maximal = true;
        for (int dy = -1; dy <= 1 && maximal; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                if (inside(lx + dx, ly + dy) && dmap.at(lx + dx, ly + dy) > di) {
                    maximal = false;
                    break;
                }
            }
        if (maximal) is_ssp[static_cast<size_t>(ly) * w + lx] = 1;
    }

    std::vector<StrokeSupportPixel> out;
    for (const Pt& p : region.pixels) {
        int lx = p.x - region.x, ly = p.y - region.y;
        if (!is_ssp[static_cast<size_t>(ly) * w + lx]) continue;
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int qx = lx + dx, qy = ly + dy;
                if (qx >= 0 && qy >= 0 && qx < w && qy < h &&
                    is_ssp[static_cast<size_t>(qy) * w + qx])
                    ++n;
            }
        StrokeSupportPixel s;
        s.x = p.x;
        s.y = p.y;
        s.d = dmap.at(lx, ly);
        s.neighbor_count = n;
        s.weight = 3.0 / n;
        out.push_back(s);
    }
    return out;
}

StrokeArea stroke_area(const std::vector<StrokeSupportPixel>& ssps) {
    std::vector<double> weighted, plain;
    weighted.reserve(ssps.size());
    plain.reserve(ssps.size());
    for (const StrokeSupportPixel& s : ssps) {
        weighted.push_back(s.weight * s.d);
        plain.push_back(s.d);
    }
    std::sort(weighted.begin(), weighted.end());
    std::sort(plain.begin(), plain.end());
    StrokeArea a;
    for (double v : weighted) a.weighted += v;
    for (double v : plain) a.unweighted += v;
    a.weighted *= 2.0;
    a.unweighted *= 2.0;
    return a;
}

double stroke_area_ratio(const Region& region) {
    DistanceMap dmap = distance_transform(region_mask(region));
    StrokeArea a = stroke_area(stroke_support_pixels(region, dmap));
    return std::min(a.weighted / region.area, 1.0);
}

RegionFeatures compute_features(const Region& region) {
    RegionFeatures f;
    f.stroke_area_ratio = stroke_area_ratio(region);
    f.aspect_ratio = static_cast<double>(region.w) / region.h;
    f.compactness = std::sqrt(static_cast<double>(region.area)) / region.perimeter;
    f.hull_ratio = region.area / region.hull_area;
    f.holes_ratio = region.holes_area / region.hull_area;
    return f;
}

}  // namespace stroketext
