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

#include "qgrad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgrad/errors.hpp"

namespace qgrad {

double edge_density(const EdgeMap &map) {
    if (map.bits.empty()) {
        throw ConfigError("edge_density: empty map");
    }
    return static_cast<double>(map.count_set()) / static_cast<double>(map.bits.size());
}

int label_components8(const std::vector<std::uint8_t> &bits, int width, int height,
                      std::vector<int> &labels) {
    labels.assign(bits.size(), 0);
    int next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < bits.size(); ++start) {
        if (!bits[start] || labels[start] != 0) {
            continue;
        }
        ++next;
        stack.push_back(start);
        labels[start] = next;
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(p) / width;
            const int j = static_cast<int>(p) % width;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di;
                    const int jj = j + dj;
                    if (ii < 0 || ii >= height || jj < 0 || jj >= width) {
                        continue;
                    }
                    const std::size_t q = static_cast<std::size_t>(ii) * width + jj;
                    if (bits[q] && labels[q] == 0) {
                        labels[q] = next;
                        stack.push_back(q);
                    }
                }
            }
        }
    }
    return next;
}

int edge_fragments(const EdgeMap &map) {
    std::vector<int> labels;
    return label_components8(map.bits, map.width, map.height, labels);
}

double ef_reduction(int qhed_ef, int sobel_ef) {
    if (qhed_ef < 1) {
        throw ConfigError("ef_reduction: qhed fragment count must be >= 1");
    }
    return static_cast<double>(qhed_ef - sobel_ef) / static_cast<double>(qhed_ef) * 100.0;
}

std::vector<std::uint8_t> zhang_suen_skeleton(const std::vector<std::uint8_t> &bits, int width,
                                              int height) {
    std::vector<std::uint8_t> img(bits);
    auto get = [&](int i, int j) -> int {
        if (i < 0 || i >= height || j < 0 || j >= width) {
            return 0;
        }
        return img[static_cast<std::size_t>(i) * width + j] ? 1 : 0;
    };
    std::vector<std::size_t> to_delete;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int step = 0; step < 2; ++step) {
            to_delete.clear();
            for (int i = 0; i < height; ++i) {
                for (int j = 0; j < width; ++j) {
                    if (!get(i, j)) {
                        continue;
                    }
                    // Neighborhood P2..P9 clockwise from north.
                    const int p[8] = {get(i - 1, j),     get(i - 1, j + 1), get(i, j + 1),
                                      get(i + 1, j + 1), get(i + 1, j),     get(i + 1, j - 1),
                                      get(i, j - 1),     get(i - 1, j - 1)};
                    const int b = p[0] + p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7];
                    if (b < 2 || b > 6) {
                        continue;
                    }
                    int transitions = 0;
                    for (int k = 0; k < 8; ++k) {
                        transitions += (p[k] == 0 && p[(k + 1) % 8] == 1);
                    }
                    if (transitions != 1) {
                        continue;
                    }
                    if (step == 0) {
                        if (p[0] * p[2] * p[4] != 0 || p[2] * p[4] * p[6] != 0) {
                            continue;
                        }
                    } else {
                        if (p[0] * p[2] * p[6] != 0 || p[0] * p[4] * p[6] != 0) {
                            continue;
                        }
                    }
                    to_delete.push_back(static_cast<std::size_t>(i) * width + j);
                }
            }
            for (std::size_t q : to_delete) {
                img[q] = 0;
                changed = true;
            }
        }
    }
    return img;
}

double edge_thickness(const EdgeMap &map) {
    std::vector<int> labels;
    const int components = label_components8(map.bits, map.width, map.height, labels);
    if (components == 0) {
        return 0.0;
    }
    const std::vector<std::uint8_t> skeleton = zhang_suen_skeleton(map.bits, map.width, map.height);
    std::vector<double> area(components + 1, 0.0);
    std::vector<double> skel(components + 1, 0.0);
    for (std::size_t p = 0; p < labels.size(); ++p) {
        if (labels[p] > 0) {
            area[labels[p]] += 1.0;
            if (skeleton[p]) {
                skel[labels[p]] += 1.0;
            }
        }
    }
    double sum = 0.0;
    for (int c = 1; c <= components; ++c) {
        // t (L - 1 + t) = area, quadratic in the ribbon model.
        const double l1 = skel[c] - 1.0;
        sum += (-l1 + std::sqrt(l1 * l1 + 4.0 * area[c])) / 2.0;
    }
    return sum / components;
}

double edge_entropy(const EdgeMap &map) {
    const double p = edge_density(map);
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

EdgeMetrics compute_edge_metrics(const EdgeMap &map) {
    EdgeMetrics m;
    m.ed = edge_density(map);
    m.ef = edge_fragments(map);
    m.et = edge_thickness(map);
    m.ee = edge_entropy(map);
    return m;
}

CornerMetrics corner_match(const CornerSet &detected,
                           const std::vector<std::pair<int, int>> &truth, double radius) {
    if (radius <= 0.0) {
        throw ConfigError("corner_match: radius must be > 0");
    }
    if (truth.empty()) {
        throw ConfigError("corner_match: empty ground truth; accuracy is undefined");
    }
    struct Pairing {
        double dist;
        std::size_t det;
        std::size_t tru;
    };
    std::vector<Pairing> pairs;
    for (std::size_t d = 0; d < detected.corners.size(); ++d) {
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double dist = std::hypot(detected.corners[d].x - truth[t].first,
                                           detected.corners[d].y - truth[t].second);
            if (dist <= radius) {
                pairs.push_back({dist, d, t});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pairing &a, const Pairing &b) {
        if (a.dist != b.dist) {
            return a.dist < b.dist;
        }
        if (a.det != b.det) {
            return a.det < b.det;
        }
        return a.tru < b.tru;
    });
    std::vector<bool> det_used(detected.corners.size(), false);
    std::vector<bool> tru_used(truth.size(), false);
    int tp = 0;
    for (const Pairing &p : pairs) {
        if (det_used[p.det] || tru_used[p.tru]) {
            continue;
        }
        det_used[p.det] = true;
        tru_used[p.tru] = true;
        ++tp;
    }
    CornerMetrics m;
    m.match_radius = radius;
    m.tp = tp;
    m.fp = static_cast<int>(detected.corners.size()) - tp;
    m.cda = 100.0 * tp / static_cast<double>(truth.size());
    const int total = m.tp + m.fp;
    m.fpr = total == 0 ? 0.0 : 100.0 * m.fp / static_cast<double>(total);
    return m;
}

double ssim(const GrayImage &a, const GrayImage &b) {
    if (a.width != b.width || a.height != b.height) {
        throw ConfigError("ssim: images must share dimensions");
    }
    constexpr int kWin = 8;
    if (a.width < kWin || a.height < kWin) {
        throw ConfigError("ssim: images smaller than the 8x8 window");
    }
    const double L = static_cast<double>((1 << a.bit_depth) - 1);
    const double c1 = (0.01 * L) * (0.01 * L);
    const double c2 = (0.03 * L) * (0.03 * L);
    constexpr double inv_n = 1.0 / (kWin * kWin);
    constexpr double bessel = static_cast<double>(kWin * kWin) / (kWin * kWin - 1);
    double total = 0.0;
    std::size_t windows = 0;
    for (int i = 0; i + kWin <= a.height; ++i) {
        for (int j = 0; j + kWin <= a.width; ++j) {
            double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int di = 0; di < kWin; ++di) {
                for (int dj = 0; dj < kWin; ++dj) {
                    const double va = a.at(i + di, j + dj);
                    const double vb = b.at(i + di, j + dj);
                    sa += va;
                    sb += vb;
                    saa += va * va;
                    sbb += vb * vb;
                    sab += va * vb;
                }
            }
            const double mu_a = sa * inv_n;
            const double mu_b = sb * inv_n;
            const double var_a = (saa * inv_n - mu_a * mu_a) * bessel;
            const double var_b = (sbb * inv_n - mu_b * mu_b) * bessel;
            const double cov = (sab * inv_n - mu_a * mu_b) * bessel;
            const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
            const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
            total += num / den;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

double relative_difference(const GrayImage &a, const GrayImage &b) {
    if (a.width != b.width || a.height != b.height) {
        throw ConfigError("relative_difference: images must share dimensions");
    }
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t p = 0; p < a.pixels.size(); ++p) {
        const double d = static_cast<double>(a.pixels[p]) - static_cast<double>(b.pixels[p]);
        diff += d * d;
        ref += static_cast<double>(a.pixels[p]) * a.pixels[p];
    }
    if (ref <= 0.0) {
        throw DegenerateInputError("relative_difference: zero-norm reference image");
    }
    return std::sqrt(diff / ref);
}

} // namespace qgrad
