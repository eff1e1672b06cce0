// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgrad/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

int luminance(int r, int g, int b) {
    return static_cast<int>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

// Skips PGM whitespace and '#' comment lines, then parses one unsigned int.
int read_pgm_int(std::istream &in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') {
                c = in.get();
            }
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) {
        throw IoError("malformed PGM header");
    }
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

GrayImage load_pgm(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') {
        throw IoError(path + ": not a binary PGM (P5)");
    }
    GrayImage img;
    img.width = read_pgm_int(in);
    img.height = read_pgm_int(in);
    const int maxval = read_pgm_int(in);
    if (maxval != 255) {
        throw IoError(path + ": unsupported PGM maxval " + std::to_string(maxval));
    }
    if (img.width <= 0 || img.height <= 0) {
        throw IoError(path + ": bad PGM dimensions");
    }
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char *>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        throw IoError(path + ": truncated PGM pixel data");
    }
    img.pixels.assign(raw.begin(), raw.end());
    return img;
}

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

GrayImage load_png(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) {
        throw IoError("cannot open " + path);
    }
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) {
        throw IoError("libpng init failed");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }
    std::vector<std::vector<png_byte>> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": PNG decode error");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8 || (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": only 8-bit grayscale or RGB PNG is supported");
    }
    const int channels = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    rows.resize(height);
    std::vector<png_bytep> row_ptrs(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y].resize(static_cast<std::size_t>(width) * channels);
        row_ptrs[y] = rows[y].data();
    }
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.pixels.resize(static_cast<std::size_t>(width) * height);
    for (png_uint_32 y = 0; y < height; ++y) {
        for (png_uint_32 x = 0; x < width; ++x) {
            if (channels == 1) {
                img.pixels[y * width + x] = rows[y][x];
            } else {
                const png_byte *p = &rows[y][x * 3];
                img.pixels[y * width + x] = luminance(p[0], p[1], p[2]);
            }
        }
    }
    return img;
}

bool has_png_signature(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    unsigned char sig[8] = {0};
    in.read(reinterpret_cast<char *>(sig), 8);
    if (in.gcount() != 8) {
        return false;
    }
    return png_sig_cmp(sig, 0, 8) == 0;
}

} // namespace

GrayImage load_grayscale(const std::string &path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) {
        throw IoError("cannot open " + path);
    }
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && magic[1] == '5') {
        return load_pgm(path);
    }
    if (has_png_signature(path)) {
        return load_png(path);
    }
    throw IoError(path + ": unsupported format (expected P5 PGM or PNG)");
}

void save_pgm(const GrayImage &img, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> raw(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        raw[i] = static_cast<unsigned char>(std::clamp(img.pixels[i], 0, 255));
    }
    out.write(reinterpret_cast<const char *>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

namespace {

void write_png(const std::string &path, int width, int height, int color_type,
               const std::vector<std::uint8_t> &data) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) {
        throw IoError("cannot write " + path);
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) {
        throw IoError("libpng init failed");
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG encode error");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const int channels = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; ++y) {
        row_ptrs[y] = const_cast<png_bytep>(&data[static_cast<std::size_t>(y) * width * channels]);
    }
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

void save_png_gray(const GrayImage &img, const std::string &path) {
    std::vector<std::uint8_t> data(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        data[i] = static_cast<std::uint8_t>(std::clamp(img.pixels[i], 0, 255));
    }
    write_png(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, data);
}

void save_png_rgb(const std::vector<std::uint8_t> &rgb, int width, int height,
                  const std::string &path) {
    if (rgb.size() != static_cast<std::size_t>(width) * height * 3) {
        throw ConfigError("save_png_rgb: buffer size does not match dimensions");
    }
    write_png(path, width, height, PNG_COLOR_TYPE_RGB, rgb);
}

} // namespace qgrad
