#include "stroketext/imageio.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <vector>

namespace stroketext {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

ColorImage read_png_file(FILE* fp, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("failed to decode PNG: " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    ColorImage img(static_cast<int>(w), static_cast<int>(h));
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.data.data() + 3 * static_cast<size_t>(y) * w;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

uint32_t rd_u32(const uint8_t* p) {
    return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
int32_t rd_i32(const uint8_t* p) { return static_cast<int32_t>(rd_u32(p)); }
uint16_t rd_u16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

ColorImage read_bmp_file(FILE* fp, const std::string& path) {
    std::fseek(fp, 0, SEEK_END);
    long size = std::ftell(fp);
    std::fseek(fp, 0, SEEK_SET);
    if (size < 54) throw std::runtime_error("truncated BMP: " + path);
    std::vector<uint8_t> buf(static_cast<size_t>(size));
    if (std::fread(buf.data(), 1, buf.size(), fp) != buf.size())
        throw std::runtime_error("failed to read BMP: " + path);

    if (buf[0] != 'B' || buf[1] != 'M') throw std::runtime_error("not a BMP: " + path);
    uint32_t data_off = rd_u32(&buf[10]);
    uint32_t hdr_size = rd_u32(&buf[14]);
    if (hdr_size < 40) throw std::runtime_error("unsupported BMP header: " + path);
    int32_t w = rd_i32(&buf[18]);
    int32_t h = rd_i32(&buf[22]);
    uint16_t bpp = rd_u16(&buf[28]);
    uint32_t compression = rd_u32(&buf[30]);
    if (w <= 0 || h == 0) throw std::runtime_error("bad BMP dimensions: " + path);
    if (compression != 0 || (bpp != 24 && bpp != 32))
        throw std::runtime_error("only uncompressed 24/32-bit BMP supported: " + path);

    bool top_down = h < 0;
    int height = top_down ? -h : h;
    int bytespp = bpp / 8;
    size_t row_stride = (static_cast<size_t>(w) * bytespp + 3) & ~size_t{3};
    if (data_off + row_stride * height > buf.size())
        throw std::runtime_error("truncated BMP pixel data: " + path);

    ColorImage img(w, height);
    for (int y = 0; y < height; ++y) {
        int src_y = top_down ? y : height - 1 - y;
        const uint8_t* row = &buf[data_off + row_stride * src_y];
        for (int x = 0; x < w; ++x) {
            const uint8_t* p = row + static_cast<size_t>(x) * bytespp;
            img.set(x, y, p[2], p[1], p[0]);  // BMP stores BGR
        }
    }
    return img;
}

void write_png_impl(const std::string& path, int w, int h, int channels, const uint8_t* data) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to write PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = const_cast<uint8_t*>(data) + static_cast<size_t>(channels) * y * w;
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

bool has_suffix(const std::string& s, const std::string& suf) {
    if (s.size() < suf.size()) return false;
    for (size_t i = 0; i < suf.size(); ++i) {
        char a = s[s.size() - suf.size() + i];
        if (std::tolower(static_cast<unsigned char>(a)) != suf[i]) return false;
    }
    return true;
}

}  // namespace

ColorImage read_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open: " + path);
    uint8_t magic[8] = {0};
    size_t got = std::fread(magic, 1, sizeof(magic), fp.get());
    std::fseek(fp.get(), 0, SEEK_SET);
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return read_png_file(fp.get(), path);
    if (got >= 2 && magic[0] == 'B' && magic[1] == 'M') return read_bmp_file(fp.get(), path);
    if (has_suffix(path, ".png") || has_suffix(path, ".bmp"))
        throw std::runtime_error("corrupt image file: " + path);
    throw std::runtime_error("unsupported image format: " + path);
}

void write_png(const std::string& path, const ColorImage& img) {
    write_png_impl(path, img.width, img.height, 3, img.data.data());
}

void write_mask_png(const std::string& path, const BinaryMask& mask) {
    std::vector<uint8_t> gray(mask.bits.size());
    for (size_t i = 0; i < mask.bits.size(); ++i) gray[i] = mask.bits[i] ? 255 : 0;
    write_png_impl(path, mask.width, mask.height, 1, gray.data());
}

void write_gray_png(const std::string& path, const GrayImage& img) {
    write_png_impl(path, img.width, img.height, 1, img.data.data());
}

GrayImage read_gray_png(const std::string& path) {
    ColorImage rgb = read_image(path);
    GrayImage out(rgb.width, rgb.height);
    for (size_t i = 0, n = out.data.size(); i < n; ++i) out.data[i] = rgb.data[3 * i];
    return out;
}

}  // namespace stroketext
