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

#ifndef QGRAD_CORNER_HPP
#define QGRAD_CORNER_HPP

#include <utility>
#include <vector>

#include "qgrad/edge.hpp"
#include "qgrad/gradient_kernel.hpp"
#include "qgrad/image.hpp"

namespace qgrad {

enum class WindowKind { Gaussian3, Rect3 };

struct HarrisConfig {
    double kappa = 0.05;
    WindowKind window = WindowKind::Gaussian3;
    double response_threshold_fraction = 0.01; // of the max positive response
    int nms_radius = 2;                        // Chebyshev
    int filter_radius = 2;                     // verification circle
    EdgeConfig edge_config{};                  // builds the verification edge map
};

/// Windowed second-moment sums per pixel: a = sum w Ix^2, b = sum w Ix Iy,
/// c = sum w Iy^2. A pixel is invalid if its window touches an invalid
/// gradient.
struct StructureTensorField {
    int width = 0;
    int height = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<std::uint8_t> valid;
};

StructureTensorField structure_tensor(const GradientField &g, const HarrisConfig &cfg);

/// Harris score a*c - b^2 - kappa (a + c)^2 per pixel; 0 on invalid pixels.
std::vector<double> harris_response(const StructureTensorField &t, double kappa);

enum class RegionKind { Flat, Edge, Corner };

/// Flat if |score| <= flat_band, edge if score < -flat_band, corner above.
RegionKind classify_region(double score, double flat_band);

enum class CornerSource { QhcdSobel, QhedHeuristic, ClassicalHarris };

struct Corner {
    int x = 0; // column
    int y = 0; // row
    double score = 0.0;
};

struct CornerSet {
    std::vector<Corner> corners;
    CornerSource source = CornerSource::ClassicalHarris;
};

/// Keeps pixels that are maxima within Chebyshev radius nms_radius and at
/// least response_threshold_fraction of the max positive response. Plateau
/// ties go to the row-major-first pixel. Empty when nothing is positive.
CornerSet nms_and_threshold(const std::vector<double> &response, int width, int height,
                            const HarrisConfig &cfg);

/// Discrete circle perimeter (midpoint algorithm) of the given radius as
/// (dx, dy) offsets in circular order; diametric opposition is index + n/2.
std::vector<std::pair<int, int>> circle_perimeter(int radius);

/// FAST-style false-corner filter: a candidate is dropped when two
/// diametrically opposite pixels of the radius-2 verification circle are
/// both set in the edge map (the signature of a straight edge running
/// through the candidate). Never adds candidates.
CornerSet fast_like_filter(const CornerSet &candidates, const EdgeMap &edges, int radius = 2);

/// Quantum Harris pipeline: lag-2 kernel gradients -> Sobel assembly ->
/// structure tensor -> response -> NMS/threshold -> verification filter.
CornerSet qhcd(const GrayImage &img, Encoding encoding, const HarrisConfig &cfg);

/// Edge-intersection heuristic over the lag-2 interference maps: a pixel is
/// a candidate when both the x and y passes fire within its 3x3
/// neighborhood; its response is the sum of the two neighborhood maxima.
CornerSet qhed_corner_heuristic(const GrayImage &img, Encoding encoding, const HarrisConfig &cfg);

/// Classical baseline: direct Sobel gradients through the same Harris chain.
CornerSet classical_harris(const GrayImage &img, const HarrisConfig &cfg);

} // namespace qgrad

#endif
