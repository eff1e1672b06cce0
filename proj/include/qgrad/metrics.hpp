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

#ifndef QGRAD_METRICS_HPP
#define QGRAD_METRICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qgrad/corner.hpp"
#include "qgrad/edge.hpp"
#include "qgrad/image.hpp"

namespace qgrad {

struct EdgeMetrics {
    double ed = 0.0; // edge density
    double et = 0.0; // mean edge thickness, pixels
    int ef = 0;      // 8-connected fragment count
    double ee = 0.0; // entropy, bits
};

/// Fraction of set pixels.
double edge_density(const EdgeMap &map);

/// Number of 8-connected components of set pixels.
int edge_fragments(const EdgeMap &map);

/// (qhed_ef - sobel_ef) / qhed_ef * 100; negative when Sobel fragments more.
double ef_reduction(int qhed_ef, int sobel_ef);

/// Mean per-component thickness. Each component is modeled as a ribbon:
/// its Zhang-Suen skeleton loses about (t - 1) pixels of length to end
/// erosion, so thickness solves t (L - 1 + t) = area with L the skeleton
/// pixel count. Exact for 1-px lines and rings; a 3x10 bar comes out ~3.2.
double edge_thickness(const EdgeMap &map);

/// Binary entropy of the edge density: an edge map has two intensity levels,
/// so -sum p log2 p reduces to H(ED).
double edge_entropy(const EdgeMap &map);

EdgeMetrics compute_edge_metrics(const EdgeMap &map);

struct CornerMetrics {
    int tp = 0;
    int fp = 0;
    double cda = 0.0; // percent of ground-truth corners found
    double fpr = 0.0; // percent of detections that match nothing
    double match_radius = 2.0;
};

/// Greedy nearest-first one-to-one matching within `radius` (Euclidean).
/// Each truth corner absorbs at most one detection.
CornerMetrics corner_match(const CornerSet &detected,
                           const std::vector<std::pair<int, int>> &truth, double radius = 2.0);

/// Mean SSIM over sliding 8x8 windows, C1 = (0.01 L)^2, C2 = (0.03 L)^2
/// with L = 2^b - 1; sample (n-1) normalization for variances.
double ssim(const GrayImage &a, const GrayImage &b);

/// ||a - b||_2 / ||a||_2 over the flattened intensities.
double relative_difference(const GrayImage &a, const GrayImage &b);

/// Zhang-Suen thinning of a binary raster (parallel two-subpass form).
std::vector<std::uint8_t> zhang_suen_skeleton(const std::vector<std::uint8_t> &bits, int width,
                                              int height);

/// 8-connected labeling; labels are 1-based, 0 = background. Returns the
/// component count.
int label_components8(const std::vector<std::uint8_t> &bits, int width, int height,
                      std::vector<int> &labels);

} // namespace qgrad

#endif
