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

#include "qgrad/edge.hpp"

#include <algorithm>
#include <cmath>

#include "qgrad/errors.hpp"

namespace qgrad {

std::size_t EdgeMap::count_set() const {
    std::size_t n = 0;
    for (auto b : bits) {
        n += (b != 0);
    }
    return n;
}

GradientField sobel_from_lag2(const DiffMap &dx, const DiffMap &dy) {
    if (dx.width != dy.width || dx.height != dy.height) {
        throw ConfigError("sobel_from_lag2: diff maps disagree on dimensions");
    }
    const int w = dx.width;
    const int h = dx.height;
    GradientField g;
    g.width = w;
    g.height = h;
    g.ix.assign(static_cast<std::size_t>(w) * h, 0.0);
    g.iy.assign(static_cast<std::size_t>(w) * h, 0.0);
    g.valid.assign(static_cast<std::size_t>(w) * h, 0);
    for (int i = 1; i + 1 < h; ++i) {
        for (int j = 1; j + 1 < w; ++j) {
            const bool ok_x = dx.valid_at(i - 1, j - 1) && dx.valid_at(i, j - 1) &&
                              dx.valid_at(i + 1, j - 1);
            const bool ok_y = dy.valid_at(i - 1, j - 1) && dy.valid_at(i - 1, j) &&
                              dy.valid_at(i - 1, j + 1);
            if (!ok_x || !ok_y) {
                continue;
            }
            const std::size_t p = static_cast<std::size_t>(i) * w + j;
            g.ix[p] = dx.at(i - 1, j - 1) + 2.0 * dx.at(i, j - 1) + dx.at(i + 1, j - 1);
            g.iy[p] = dy.at(i - 1, j - 1) + 2.0 * dy.at(i - 1, j) + dy.at(i - 1, j + 1);
            g.valid[p] = 1;
        }
    }
    return g;
}

GradientField sobel_direct(const GrayImage &img) {
    const int w = img.width;
    const int h = img.height;
    GradientField g;
    g.width = w;
    g.height = h;
    g.ix.assign(static_cast<std::size_t>(w) * h, 0.0);
    g.iy.assign(static_cast<std::size_t>(w) * h, 0.0);
    g.valid.assign(static_cast<std::size_t>(w) * h, 0);
    for (int i = 1; i + 1 < h; ++i) {
        for (int j = 1; j + 1 < w; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * w + j;
            g.ix[p] = (img.at(i - 1, j - 1) + 2.0 * img.at(i, j - 1) + img.at(i + 1, j - 1)) -
                      (img.at(i - 1, j + 1) + 2.0 * img.at(i, j + 1) + img.at(i + 1, j + 1));
            g.iy[p] = (img.at(i - 1, j - 1) + 2.0 * img.at(i - 1, j) + img.at(i - 1, j + 1)) -
                      (img.at(i + 1, j - 1) + 2.0 * img.at(i + 1, j) + img.at(i + 1, j + 1));
            g.valid[p] = 1;
        }
    }
    return g;
}

std::vector<double> gradient_magnitude(const GradientField &g) {
    std::vector<double> mag(g.ix.size(), 0.0);
    for (std::size_t p = 0; p < g.ix.size(); ++p) {
        if (g.valid[p]) {
            mag[p] = std::hypot(g.ix[p], g.iy[p]);
        }
    }
    return mag;
}

std::vector<double> gradient_direction(const GradientField &g) {
    std::vector<double> dir(g.ix.size(), 0.0);
    for (std::size_t p = 0; p < g.ix.size(); ++p) {
        if (g.valid[p] && (g.ix[p] != 0.0 || g.iy[p] != 0.0)) {
            dir[p] = std::atan2(g.iy[p], g.ix[p]);
        }
    }
    return dir;
}

namespace {

double otsu_threshold(const std::vector<double> &magnitude, double max_mag) {
    // 256-bin Otsu over [0, max].
    constexpr int kBins = 256;
    std::vector<std::size_t> hist(kBins, 0);
    for (double m : magnitude) {
        int bin = static_cast<int>(m / max_mag * (kBins - 1));
        bin = std::clamp(bin, 0, kBins - 1);
        ++hist[bin];
    }
    const double total = static_cast<double>(magnitude.size());
    double sum_all = 0.0;
    for (int b = 0; b < kBins; ++b) {
        sum_all += b * static_cast<double>(hist[b]);
    }
    double sum_bg = 0.0;
    double weight_bg = 0.0;
    double best_var = -1.0;
    int best_bin = 0;
    for (int b = 0; b < kBins; ++b) {
        weight_bg += static_cast<double>(hist[b]);
        if (weight_bg == 0.0) {
            continue;
        }
        const double weight_fg = total - weight_bg;
        if (weight_fg == 0.0) {
            break;
        }
        sum_bg += b * static_cast<double>(hist[b]);
        const double mean_bg = sum_bg / weight_bg;
        const double mean_fg = (sum_all - sum_bg) / weight_fg;
        const double between = weight_bg * weight_fg * (mean_bg - mean_fg) * (mean_bg - mean_fg);
        if (between > best_var) {
            best_var = between;
            best_bin = b;
        }
    }
    return (best_bin + 1) * max_mag / (kBins - 1);
}

} // namespace

EdgeMap threshold_edges(const std::vector<double> &magnitude, int width, int height,
                        const EdgeConfig &cfg) {
    if (magnitude.size() != static_cast<std::size_t>(width) * height || magnitude.empty()) {
        throw ConfigError("threshold_edges: magnitude size does not match dimensions");
    }
    const double max_mag = *std::max_element(magnitude.begin(), magnitude.end());
    double tau = 0.0;
    switch (cfg.tau_mode) {
        case TauMode::FractionOfMax:
            if (cfg.value <= 0.0 || cfg.value > 1.0) {
                throw ConfigError("threshold_edges: fraction must be in (0, 1]");
            }
            tau = cfg.value * max_mag;
            break;
        case TauMode::Fixed:
            tau = cfg.value;
            break;
        case TauMode::Otsu:
            if (max_mag <= 0.0) {
                throw DegenerateInputError("threshold_edges: otsu needs a nonzero magnitude map");
            }
            tau = otsu_threshold(magnitude, max_mag);
            break;
    }
    EdgeMap map;
    map.width = width;
    map.height = height;
    map.threshold_used = tau;
    map.bits.assign(magnitude.size(), 0);
    for (std::size_t p = 0; p < magnitude.size(); ++p) {
        map.bits[p] = (magnitude[p] >= tau && magnitude[p] > 0.0) ? 1 : 0;
    }
    return map;
}

EdgeMap qhed_edge_map(const GrayImage &img, Encoding encoding, const EdgeConfig &cfg) {
    const DiffPair pair = lag2_both_axes(img, encoding);
    std::vector<double> score(static_cast<std::size_t>(img.width) * img.height, 0.0);
    for (std::size_t p = 0; p < score.size(); ++p) {
        const double ax = pair.dx.valid[p] ? std::abs(pair.dx.values[p]) : 0.0;
        const double ay = pair.dy.valid[p] ? std::abs(pair.dy.values[p]) : 0.0;
        score[p] = std::max(ax, ay);
    }
    return threshold_edges(score, img.width, img.height, cfg);
}

} // namespace qgrad
