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

#ifndef QGRAD_EDGE_HPP
#define QGRAD_EDGE_HPP

#include <cstdint>
#include <vector>

#include "qgrad/gradient_kernel.hpp"
#include "qgrad/image.hpp"

namespace qgrad {

/// Per-pixel Sobel gradients. Invalid pixels (stencil touched a masked
/// difference or the image border) carry ix = iy = 0. No synthetic padding
/// is used anywhere: invalid borders stay out of every downstream decision.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> ix;
    std::vector<double> iy;
    std::vector<std::uint8_t> valid;

    bool valid_at(int row, int col) const {
        return valid[static_cast<std::size_t>(row) * width + col] != 0;
    }
};

/// Assembles Sobel gradients from lag-2 difference maps:
///   Ix(i,j) = dx(i-1,j-1) + 2 dx(i,j-1) + dx(i+1,j-1)
///   Iy(i,j) = dy(i-1,j-1) + 2 dy(i-1,j) + dy(i-1,j+1)
/// which reproduces the 3x3 kernel convolution (left-minus-right /
/// top-minus-bottom sign convention) wherever all stencil entries are valid.
GradientField sobel_from_lag2(const DiffMap &dx, const DiffMap &dy);

/// Direct 3x3 Sobel convolution of the raw image; the classical baseline and
/// the oracle for the quantum-assembled path. Border pixels are invalid.
GradientField sobel_direct(const GrayImage &img);

std::vector<double> gradient_magnitude(const GradientField &g);

/// Full-quadrant angle atan2(iy, ix) in (-pi, pi]; 0 where both are 0.
std::vector<double> gradient_direction(const GradientField &g);

enum class TauMode { FractionOfMax, Fixed, Otsu };

struct EdgeConfig {
    TauMode tau_mode = TauMode::FractionOfMax;
    double value = 0.2; // fraction for FractionOfMax, threshold for Fixed
};

struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;
    double threshold_used = 0.0;

    bool at(int row, int col) const { return bits[static_cast<std::size_t>(row) * width + col] != 0; }
    std::size_t count_set() const;
};

/// bit = (mag >= tau && mag > 0). Exact zeros never fire, so tau = 0 marks
/// exactly the pixels with nonzero magnitude.
EdgeMap threshold_edges(const std::vector<double> &magnitude, int width, int height,
                        const EdgeConfig &cfg);

/// Lag-2 interference edge map: per pixel the maximum of |x diff| and
/// |y diff| (invalid entries contribute 0), thresholded directly without
/// Sobel smoothing.
EdgeMap qhed_edge_map(const GrayImage &img, Encoding encoding, const EdgeConfig &cfg);

} // namespace qgrad

#endif
