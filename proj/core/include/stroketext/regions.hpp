#pragma once

#include <vector>

#include "stroketext/image.hpp"

namespace stroketext {

struct Pt {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Pt& a, const Pt& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// A connected pixel set plus its geometry. `pixels` is kept in row-major
// scan order so identical sets compare equal.
struct Region {
    std::vector<Pt> pixels;
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    int area = 0;
    int perimeter = 0;
    int holes_area = 0;
    double hull_area = 0.0;
};

struct RegionGeometry {
    int perimeter = 0;
    double hull_area = 0.0;
    int holes_area = 0;
};

// Perimeter counts region pixels with a 4-neighbor outside the set. The hull
// is taken over the corner points of each pixel's unit square, so hull_area
// is at least the pixel count. Holes are background components (4-connected)
// that cannot reach the outside of the bounding box.
RegionGeometry region_geometry(const std::vector<Pt>& pixels);

// Sorts pixels, fills bbox/area and the geometry fields.
void finalize_region(Region& r);

std::vector<Region> connected_components(const BinaryMask& mask, int connectivity = 8);

// Bbox-local mask of the region. Distances computed on it match the
// full-image mask exactly because everything outside the region is
// background either way.
BinaryMask region_mask(const Region& r);

}  // namespace stroketext
