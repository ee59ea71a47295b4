#pragma once

#include <string>

#include "stroketext/image.hpp"

namespace stroketext {

// Reads an 8-bit RGB image from PNG or BMP (24/32-bit uncompressed).
// Grayscale and paletted PNGs are expanded to RGB; alpha is dropped.
// Throws std::runtime_error on unreadable files.
ColorImage read_image(const std::string& path);

void write_png(const std::string& path, const ColorImage& img);

// Masks are written as 1-channel PNG with values 0/255.
void write_mask_png(const std::string& path, const BinaryMask& mask);
void write_gray_png(const std::string& path, const GrayImage& img);

GrayImage read_gray_png(const std::string& path);

}  // namespace stroketext
