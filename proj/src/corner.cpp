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

#include "qgrad/corner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

void validate(const HarrisConfig &cfg) {
    if (cfg.kappa <= 0.0 || cfg.kappa >= 0.25) {
        throw ConfigError("harris: kappa must be in (0, 0.25)");
    }
    if (cfg.nms_radius < 1) {
        throw ConfigError("harris: nms_radius must be >= 1");
    }
    if (cfg.response_threshold_fraction <= 0.0 || cfg.response_threshold_fraction > 1.0) {
        throw ConfigError("harris: response_threshold_fraction must be in (0, 1]");
    }
}

std::array<double, 9> window_weights(WindowKind kind) {
    std::array<double, 9> w{};
    if (kind == WindowKind::Rect3) {
        w.fill(1.0);
        return w;
    }
    // 3x3 Gaussian, sigma 1, normalized to sum 1.
    double sum = 0.0;
    int k = 0;
    for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
            w[k] = std::exp(-(di * di + dj * dj) / 2.0);
            sum += w[k];
            ++k;
        }
    }
    for (double &v : w) {
        v /= sum;
    }
    return w;
}

} // namespace

StructureTensorField structure_tensor(const GradientField &g, const HarrisConfig &cfg) {
    validate(cfg);
    const auto w9 = window_weights(cfg.window);
    const int w = g.width;
    const int h = g.height;
    StructureTensorField t;
    t.width = w;
    t.height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    t.a.assign(n, 0.0);
    t.b.assign(n, 0.0);
    t.c.assign(n, 0.0);
    t.valid.assign(n, 0);
    for (int i = 1; i + 1 < h; ++i) {
        for (int j = 1; j + 1 < w; ++j) {
            bool ok = true;
            double sa = 0.0;
            double sb = 0.0;
            double sc = 0.0;
            int k = 0;
            for (int di = -1; di <= 1 && ok; ++di) {
                for (int dj = -1; dj <= 1; ++dj, ++k) {
                    if (!g.valid_at(i + di, j + dj)) {
                        ok = false;
                        break;
                    }
                    const std::size_t q = static_cast<std::size_t>(i + di) * w + (j + dj);
                    sa += w9[k] * g.ix[q] * g.ix[q];
                    sb += w9[k] * g.ix[q] * g.iy[q];
                    sc += w9[k] * g.iy[q] * g.iy[q];
                }
            }
            if (!ok) {
                continue;
            }
            const std::size_t p = static_cast<std::size_t>(i) * w + j;
            t.a[p] = sa;
            t.b[p] = sb;
            t.c[p] = sc;
            t.valid[p] = 1;
        }
    }
    return t;
}

std::vector<double> harris_response(const StructureTensorField &t, double kappa) {
    std::vector<double> resp(t.a.size(), 0.0);
    for (std::size_t p = 0; p < t.a.size(); ++p) {
        if (!t.valid[p]) {
            continue;
        }
        const double tr = t.a[p] + t.c[p];
        resp[p] = t.a[p] * t.c[p] - t.b[p] * t.b[p] - kappa * tr * tr;
    }
    return resp;
}

RegionKind classify_region(double score, double flat_band) {
    if (flat_band < 0.0) {
        throw ConfigError("classify_region: flat_band must be >= 0");
    }
    if (std::abs(score) <= flat_band) {
        return RegionKind::Flat;
    }
    return score < 0.0 ? RegionKind::Edge : RegionKind::Corner;
}

CornerSet nms_and_threshold(const std::vector<double> &response, int width, int height,
                            const HarrisConfig &cfg) {
    validate(cfg);
    if (response.size() != static_cast<std::size_t>(width) * height) {
        throw ConfigError("nms_and_threshold: response size does not match dimensions");
    }
    CornerSet set;
    double max_pos = 0.0;
    for (double r : response) {
        max_pos = std::max(max_pos, r);
    }
    if (max_pos <= 0.0) {
        return set;
    }
    const double threshold = cfg.response_threshold_fraction * max_pos;
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            const double v = response[static_cast<std::size_t>(i) * width + j];
            if (v <= 0.0 || v < threshold) {
                continue;
            }
            bool keep = true;
            for (int di = -cfg.nms_radius; di <= cfg.nms_radius && keep; ++di) {
                for (int dj = -cfg.nms_radius; dj <= cfg.nms_radius; ++dj) {
                    if (di == 0 && dj == 0) {
                        continue;
                    }
                    const int ii = i + di;
                    const int jj = j + dj;
                    if (ii < 0 || ii >= height || jj < 0 || jj >= width) {
                        continue;
                    }
                    const double u = response[static_cast<std::size_t>(ii) * width + jj];
                    // A tie survives only at its row-major-first pixel.
                    if (u > v || (u == v && (ii < i || (ii == i && jj < j)))) {
                        keep = false;
                        break;
                    }
                }
            }
            if (keep) {
                set.corners.push_back(Corner{j, i, v});
            }
        }
    }
    return set;
}

std::vector<std::pair<int, int>> circle_perimeter(int radius) {
    if (radius < 1) {
        throw ConfigError("circle_perimeter: radius must be >= 1");
    }
    // Midpoint circle; collect one octant and reflect.
    std::vector<std::pair<int, int>> pts;
    int x = radius;
    int y = 0;
    int d = 3 - 2 * radius;
    while (x >= y) {
        const std::pair<int, int> oct[8] = {{x, y},  {y, x},  {-y, x},  {-x, y},
                                            {-x, -y}, {-y, -x}, {y, -x},  {x, -y}};
        for (const auto &p : oct) {
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
                pts.push_back(p);
            }
        }
        if (d < 0) {
            d += 4 * y + 6;
        } else {
            d += 4 * (y - x) + 10;
            --x;
        }
        ++y;
    }
    // Circular order by angle so that opposition is index + n/2.
    std::sort(pts.begin(), pts.end(), [](const auto &p, const auto &q) {
        return std::atan2(static_cast<double>(p.second), static_cast<double>(p.first)) <
               std::atan2(static_cast<double>(q.second), static_cast<double>(q.first));
    });
    return pts;
}

CornerSet fast_like_filter(const CornerSet &candidates, const EdgeMap &edges, int radius) {
    const auto perimeter = circle_perimeter(radius);
    const std::size_t half = perimeter.size() / 2;
    CornerSet kept;
    kept.source = candidates.source;
    for (const Corner &c : candidates.corners) {
        auto set_at = [&](std::size_t k) {
            const int x = c.x + perimeter[k].first;
            const int y = c.y + perimeter[k].second;
            return x >= 0 && x < edges.width && y >= 0 && y < edges.height && edges.at(y, x);
        };
        bool straight_edge = false;
        for (std::size_t k = 0; k < half && !straight_edge; ++k) {
            straight_edge = set_at(k) && set_at(k + half);
        }
        if (!straight_edge) {
            kept.corners.push_back(c);
        }
    }
    return kept;
}

namespace {

CornerSet harris_chain(const GradientField &field, const HarrisConfig &cfg, CornerSource source) {
    const StructureTensorField tensor = structure_tensor(field, cfg);
    const std::vector<double> response = harris_response(tensor, cfg.kappa);
    CornerSet candidates = nms_and_threshold(response, field.width, field.height, cfg);
    candidates.source = source;
    const EdgeMap verify =
        threshold_edges(gradient_magnitude(field), field.width, field.height, cfg.edge_config);
    return fast_like_filter(candidates, verify, cfg.filter_radius);
}

} // namespace

CornerSet qhcd(const GrayImage &img, Encoding encoding, const HarrisConfig &cfg) {
    const DiffPair pair = lag2_both_axes(img, encoding);
    return harris_chain(sobel_from_lag2(pair.dx, pair.dy), cfg, CornerSource::QhcdSobel);
}

CornerSet classical_harris(const GrayImage &img, const HarrisConfig &cfg) {
    return harris_chain(sobel_direct(img), cfg, CornerSource::ClassicalHarris);
}

CornerSet qhed_corner_heuristic(const GrayImage &img, Encoding encoding, const HarrisConfig &cfg) {
    validate(cfg);
    const DiffPair pair = lag2_both_axes(img, encoding);
    const int w = img.width;
    const int h = img.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> ax(n, 0.0);
    std::vector<double> ay(n, 0.0);
    double max_x = 0.0;
    double max_y = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        ax[p] = pair.dx.valid[p] ? std::abs(pair.dx.values[p]) : 0.0;
        ay[p] = pair.dy.valid[p] ? std::abs(pair.dy.values[p]) : 0.0;
        max_x = std::max(max_x, ax[p]);
        max_y = std::max(max_y, ay[p]);
    }
    const double fire_x = cfg.edge_config.tau_mode == TauMode::Fixed
                              ? cfg.edge_config.value
                              : cfg.edge_config.value * max_x;
    const double fire_y = cfg.edge_config.tau_mode == TauMode::Fixed
                              ? cfg.edge_config.value
                              : cfg.edge_config.value * max_y;
    // Candidate response: both passes must fire somewhere in the 3x3
    // neighborhood; score is the sum of the two neighborhood maxima.
    std::vector<double> response(n, 0.0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            double best_x = 0.0;
            double best_y = 0.0;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di;
                    const int jj = j + dj;
                    if (ii < 0 || ii >= h || jj < 0 || jj >= w) {
                        continue;
                    }
                    const std::size_t q = static_cast<std::size_t>(ii) * w + jj;
                    best_x = std::max(best_x, ax[q]);
                    best_y = std::max(best_y, ay[q]);
                }
            }
            if (best_x > 0.0 && best_x >= fire_x && best_y > 0.0 && best_y >= fire_y) {
                response[static_cast<std::size_t>(i) * w + j] = best_x + best_y;
            }
        }
    }
    CornerSet candidates = nms_and_threshold(response, w, h, cfg);
    candidates.source = CornerSource::QhedHeuristic;
    std::vector<double> qhed_score(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        qhed_score[p] = std::max(ax[p], ay[p]);
    }
    const EdgeMap edges = threshold_edges(qhed_score, w, h, cfg.edge_config);
    return fast_like_filter(candidates, edges, cfg.filter_radius);
}

} // namespace qgrad
