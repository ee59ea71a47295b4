#include "stroketext/image.hpp"

#include <algorithm>
#include <cmath>

namespace stroketext {

GrayImage to_gray(const ColorImage& img) {
    GrayImage out(img.width, img.height);
    const uint8_t* p = img.data.data();
    for (size_t i = 0, n = static_cast<size_t>(img.width) * img.height; i < n; ++i, p += 3) {
        double luma = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        out.data[i] = static_cast<uint8_t>(std::lround(luma));
    }
    return out;
}

GrayImage to_hue(const ColorImage& img) {
    GrayImage out(img.width, img.height);
    const uint8_t* p = img.data.data();
    for (size_t i = 0, n = static_cast<size_t>(img.width) * img.height; i < n; ++i, p += 3) {
        int r = p[0], g = p[1], b = p[2];
        int mx = std::max({r, g, b});
        int mn = std::min({r, g, b});
        if (mx == mn) {
            out.data[i] = 0;  // achromatic
            continue;
        }
        double c = mx - mn;
        double h;
        if (mx == r)
            h = std::fmod((g - b) / c, 6.0);
        else if (mx == g)
            h = (b - r) / c + 2.0;
        else
            h = (r - g) / c + 4.0;
        h *= 60.0;
        if (h < 0) h += 360.0;
        int v = static_cast<int>(std::lround(h * 255.0 / 360.0));
        out.data[i] = static_cast<uint8_t>(std::clamp(v, 0, 255));
    }
    return out;
}

GrayImage invert(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < img.data.size(); ++i) out.data[i] = 255 - img.data[i];
    return out;
}

ColorImage resize_bilinear(const ColorImage& img, int new_w, int new_h) {
    if (new_w < 1 || new_h < 1) throw std::invalid_argument("resize_bilinear: bad target size");
    ColorImage out(new_w, new_h);
    double sx = static_cast<double>(img.width) / new_w;
    double sy = static_cast<double>(img.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int y1 = std::min(y0 + 1, img.height - 1);
        y0 = std::clamp(y0, 0, img.height - 1);
        for (int x = 0; x < new_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int x1 = std::min(x0 + 1, img.width - 1);
            x0 = std::clamp(x0, 0, img.width - 1);
            const uint8_t* p00 = img.px(x0, y0);
            const uint8_t* p10 = img.px(x1, y0);
            const uint8_t* p01 = img.px(x0, y1);
            const uint8_t* p11 = img.px(x1, y1);
            uint8_t* q = out.px(x, y);
            for (int c = 0; c < 3; ++c) {
                double top = p00[c] * (1 - wx) + p10[c] * wx;
                double bot = p01[c] * (1 - wx) + p11[c] * wx;
                q[c] = static_cast<uint8_t>(std::lround(top * (1 - wy) + bot * wy));
            }
        }
    }
    return out;
}

}  // namespace stroketext
