#include "mechsketch/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "mechsketch/errors.hpp"

namespace mechsketch {
namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

void write_rows(const std::string& path, int width, int height, int bit_depth, int color_type,
                const std::vector<png_bytep>& rows) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw InputError("cannot open for writing: " + path);

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) throw NumericError("png_create_write_struct failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw NumericError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(w.png))) throw InputError("png write failed: " + path);

    png_init_io(w.png, fp.get());
    png_set_IHDR(w.png, w.info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    if (bit_depth < 8) png_set_packing(w.png);
    png_write_image(w.png, const_cast<png_bytepp>(rows.data()));
    png_write_end(w.png, nullptr);
}

}  // namespace

void write_png_mask(const std::string& path, const Mask& mask) {
    // 1-bit gray: 0 = black ink, 1 = white background.
    std::vector<std::uint8_t> buf(mask.data.size());
    for (size_t i = 0; i < buf.size(); ++i) buf[i] = mask.data[i] ? 0 : 1;
    std::vector<png_bytep> rows(mask.height);
    for (int y = 0; y < mask.height; ++y) rows[y] = buf.data() + static_cast<size_t>(y) * mask.width;
    write_rows(path, mask.width, mask.height, 1, PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_gray(const std::string& path, const ImageD& ink) {
    std::vector<std::uint8_t> buf(ink.size());
    for (size_t i = 0; i < buf.size(); ++i) {
        double v = ink.data[i];
        v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        buf[i] = static_cast<std::uint8_t>(255.0 * (1.0 - v) + 0.5);
    }
    std::vector<png_bytep> rows(ink.height);
    for (int y = 0; y < ink.height; ++y) rows[y] = buf.data() + static_cast<size_t>(y) * ink.width;
    write_rows(path, ink.width, ink.height, 8, PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_rgb(const std::string& path, int width, int height, const std::vector<std::uint8_t>& rgb) {
    if (rgb.size() != static_cast<size_t>(width) * height * 3)
        throw InputError("rgb buffer size does not match dimensions");
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(rgb.data() + static_cast<size_t>(y) * width * 3);
    write_rows(path, width, height, 8, PNG_COLOR_TYPE_RGB, rows);
}

Mask read_png_mask(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw InputError("cannot open PNG: " + path);

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw NumericError("png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw NumericError("png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png))) throw InputError("not a readable PNG: " + path);

    png_init_io(r.png, fp.get());
    png_read_info(r.png, r.info);

    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(r.png, r.info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    if (bit_depth == 16) png_set_strip_16(r.png);
    png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    int channels = png_get_channels(r.png, r.info);
    std::vector<std::uint8_t> buf(static_cast<size_t>(width) * height * channels);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = buf.data() + static_cast<size_t>(y) * width * channels;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    Mask mask(static_cast<int>(width), static_cast<int>(height));
    for (size_t i = 0; i < static_cast<size_t>(width) * height; ++i) {
        int luma;
        if (channels >= 3) {
            const std::uint8_t* p = &buf[i * channels];
            luma = (299 * p[0] + 587 * p[1] + 114 * p[2]) / 1000;
        } else {
            luma = buf[i * channels];
        }
        mask.data[i] = luma < 128 ? 1 : 0;
    }
    return mask;
}

}  // namespace mechsketch
