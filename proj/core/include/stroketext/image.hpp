#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stroketext {

// Row-major 8-bit RGB image. data holds 3*width*height bytes.
struct ColorImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    ColorImage() = default;
    ColorImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(3) * w * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("ColorImage: bad dimensions");
    }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    uint8_t* px(int x, int y) { return &data[3 * (static_cast<size_t>(y) * width + x)]; }
    const uint8_t* px(int x, int y) const { return &data[3 * (static_cast<size_t>(y) * width + x)]; }
    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        uint8_t* p = px(x, y);
        p[0] = r; p[1] = g; p[2] = b;
    }
};

// Row-major 8-bit single channel image.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: bad dimensions");
    }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

// Row-major boolean mask, one byte per pixel (0 = background, 1 = foreground).
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, uint8_t fill = 0)
        : width(w), height(h), bits(static_cast<size_t>(w) * h, fill) {}

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    // Out-of-bounds coordinates read as background.
    bool get(int x, int y) const {
        return in_bounds(x, y) && bits[static_cast<size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v = true) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }
    size_t count() const {
        size_t n = 0;
        for (uint8_t b : bits) n += (b != 0);
        return n;
    }
};

// Exact Euclidean distance to the nearest background pixel; 0 on background.
// The image border counts as background.
struct DistanceMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    DistanceMap() = default;
    DistanceMap(int w, int h) : width(w), height(h), values(static_cast<size_t>(w) * h, 0.0) {}

    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const {
        if (x < 0 || x >= width || y < 0 || y >= height) return 0.0;
        return values[static_cast<size_t>(y) * width + x];
    }
};

// Rec.601 luma, rounded.
GrayImage to_gray(const ColorImage& img);

// HSV hue in [0,360) scaled to [0,255]; achromatic pixels map to 0.
GrayImage to_hue(const ColorImage& img);

GrayImage invert(const GrayImage& img);

// Bilinear resize to (new_w, new_h). Both dimensions must be >= 1.
ColorImage resize_bilinear(const ColorImage& img, int new_w, int new_h);

}  // namespace stroketext
