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

#ifndef QGRAD_IMAGE_HPP
#define QGRAD_IMAGE_HPP

#include <vector>

namespace qgrad {

/// Row-major grayscale raster with integer intensities in [0, 2^bit_depth - 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<int> pixels;

    int max_value() const { return (1 << bit_depth) - 1; }
    int at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    int &at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

/// Row-major flattening of an image with its L2 norm retained; the norm is
/// the classical side information every decoder needs to get back to
/// intensity units.
struct ImageVector {
    std::vector<double> values;
    int width = 0;
    int height = 0;
    double l2_norm = 0.0;
};

/// Bilinear resample to side x side; side must be a power of two >= 2.
/// Pixel centers are aligned (src = (dst + 0.5) * scale - 0.5), so a
/// same-size resize is a pixel-exact copy.
GrayImage resize_pow2(const GrayImage &img, int side);

ImageVector vectorize(const GrayImage &img);

GrayImage transpose(const GrayImage &img);

/// Inverse of vectorize; values are rounded and clamped to [0, 2^b - 1].
GrayImage devectorize(const ImageVector &v, int bit_depth = 8);

} // namespace qgrad

#endif
