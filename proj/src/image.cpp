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

#include "qgrad/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

} // namespace

GrayImage resize_pow2(const GrayImage &img, int side) {
    if (side < 2 || !is_power_of_two(side)) {
        throw ConfigError("resize_pow2: side must be a power of two >= 2, got " + std::to_string(side));
    }
    if (img.width <= 0 || img.height <= 0) {
        throw ConfigError("resize_pow2: empty image");
    }
    GrayImage out;
    out.width = side;
    out.height = side;
    out.bit_depth = img.bit_depth;
    out.pixels.resize(static_cast<std::size_t>(side) * side);
    if (img.width == side && img.height == side) {
        out.pixels = img.pixels;
        return out;
    }
    const double sx = static_cast<double>(img.width) / side;
    const double sy = static_cast<double>(img.height) / side;
    const int maxv = img.max_value();
    for (int i = 0; i < side; ++i) {
        double fy = (i + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(std::floor(fy));
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int j = 0; j < side; ++j) {
            double fx = (j + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(std::floor(fx));
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            const double top = img.at(y0, x0) * (1.0 - wx) + img.at(y0, x1) * wx;
            const double bot = img.at(y1, x0) * (1.0 - wx) + img.at(y1, x1) * wx;
            const double v = top * (1.0 - wy) + bot * wy;
            out.at(i, j) = std::clamp(static_cast<int>(std::lround(v)), 0, maxv);
        }
    }
    return out;
}

ImageVector vectorize(const GrayImage &img) {
    ImageVector v;
    v.width = img.width;
    v.height = img.height;
    v.values.resize(img.pixels.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        v.values[i] = static_cast<double>(img.pixels[i]);
        sum += v.values[i] * v.values[i];
    }
    v.l2_norm = std::sqrt(sum);
    return v;
}

GrayImage transpose(const GrayImage &img) {
    GrayImage out;
    out.width = img.height;
    out.height = img.width;
    out.bit_depth = img.bit_depth;
    out.pixels.resize(img.pixels.size());
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            out.at(j, i) = img.at(i, j);
        }
    }
    return out;
}

GrayImage devectorize(const ImageVector &v, int bit_depth) {
    if (static_cast<std::size_t>(v.width) * v.height != v.values.size()) {
        throw ConfigError("devectorize: width*height does not match value count");
    }
    GrayImage img;
    img.width = v.width;
    img.height = v.height;
    img.bit_depth = bit_depth;
    img.pixels.resize(v.values.size());
    const int maxv = img.max_value();
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        img.pixels[i] = std::clamp(static_cast<int>(std::lround(v.values[i])), 0, maxv);
    }
    return img;
}

} // namespace qgrad
