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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qgrad/errors.hpp"
#include "test_helpers.hpp"

using namespace qgrad;
using qgrad::testing::constant_image;
using qgrad::testing::random_image;
using qgrad::testing::square_image;

namespace {

GradientField uniform_field(int w, int h, double ix, double iy) {
    GradientField g;
    g.width = w;
    g.height = h;
    g.ix.assign(static_cast<std::size_t>(w) * h, ix);
    g.iy.assign(static_cast<std::size_t>(w) * h, iy);
    g.valid.assign(static_cast<std::size_t>(w) * h, 1);
    return g;
}

EdgeMap empty_edges(int w, int h) {
    EdgeMap map;
    map.width = w;
    map.height = h;
    map.bits.assign(static_cast<std::size_t>(w) * h, 0);
    return map;
}

bool within_radius_of_any(const Corner &c, const std::vector<std::pair<int, int>> &truth,
                          double radius) {
    for (const auto &[tx, ty] : truth) {
        if (std::hypot(c.x - tx, c.y - ty) <= radius) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST(StructureTensor, ZeroGradientsGiveZeroTensor) {
    const StructureTensorField t = structure_tensor(uniform_field(8, 8, 0, 0), HarrisConfig{});
    for (std::size_t p = 0; p < t.a.size(); ++p) {
        EXPECT_DOUBLE_EQ(t.a[p], 0.0);
        EXPECT_DOUBLE_EQ(t.b[p], 0.0);
        EXPECT_DOUBLE_EQ(t.c[p], 0.0);
    }
}

TEST(StructureTensor, RectangularWindowHandSum) {
    HarrisConfig cfg;
    cfg.window = WindowKind::Rect3;
    const StructureTensorField t = structure_tensor(uniform_field(8, 8, 1, 0), cfg);
    const std::size_t p = 3 * 8 + 3;
    EXPECT_DOUBLE_EQ(t.a[p], 9.0);
    EXPECT_DOUBLE_EQ(t.b[p], 0.0);
    EXPECT_DOUBLE_EQ(t.c[p], 0.0);
}

TEST(StructureTensor, CauchySchwarzOnRandomFields) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist(0.0, 5.0);
    GradientField g = uniform_field(12, 12, 0, 0);
    for (std::size_t p = 0; p < g.ix.size(); ++p) {
        g.ix[p] = dist(rng);
        g.iy[p] = dist(rng);
    }
    for (WindowKind w : {WindowKind::Gaussian3, WindowKind::Rect3}) {
        HarrisConfig cfg;
        cfg.window = w;
        const StructureTensorField t = structure_tensor(g, cfg);
        for (std::size_t p = 0; p < t.a.size(); ++p) {
            EXPECT_GE(t.a[p], 0.0);
            EXPECT_GE(t.c[p], 0.0);
            EXPECT_LE(t.b[p] * t.b[p], t.a[p] * t.c[p] + 1e-9);
        }
    }
}

TEST(StructureTensor, WindowTouchingInvalidGradientIsInvalid) {
    GradientField g = uniform_field(8, 8, 1, 1);
    g.valid[3 * 8 + 3] = 0;
    const StructureTensorField t = structure_tensor(g, HarrisConfig{});
    for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
            EXPECT_FALSE(t.valid[(3 + di) * 8 + (3 + dj)]);
        }
    }
    EXPECT_TRUE(t.valid[6 * 8 + 6]);
}

TEST(HarrisResponse, DiagonalCases) {
    StructureTensorField t;
    t.width = 3;
    t.height = 1;
    t.a = {1.0, 1.0, 0.0};
    t.b = {0.0, 0.0, 0.0};
    t.c = {1.0, 0.0, 0.0};
    t.valid = {1, 1, 1};
    const auto r = harris_response(t, 0.05);
    EXPECT_DOUBLE_EQ(r[0], 0.8);   // det 1, trace 2
    EXPECT_DOUBLE_EQ(r[1], -0.05); // rank-1: edge-signed
    EXPECT_DOUBLE_EQ(r[2], 0.0);   // flat
}

TEST(HarrisResponse, BoundedByDet) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        StructureTensorField t;
        t.width = 1;
        t.height = 1;
        const double a = dist(rng);
        const double c = dist(rng);
        const double b = std::sqrt(a * c) * std::uniform_real_distribution<double>(-1, 1)(rng);
        t.a = {a};
        t.b = {b};
        t.c = {c};
        t.valid = {1};
        const double r = harris_response(t, 0.05)[0];
        EXPECT_LE(r, a * c + 1e-12);
        const double tr = a + c;
        EXPECT_LE(r, (tr / 2) * (tr / 2) - 0.05 * tr * tr + 1e-12);
    }
}

TEST(ClassifyRegion, ThreeWaySplit) {
    EXPECT_EQ(classify_region(0.8, 0.1), RegionKind::Corner);
    EXPECT_EQ(classify_region(-0.05, 0.01), RegionKind::Edge);
    EXPECT_EQ(classify_region(0.005, 0.01), RegionKind::Flat);
    EXPECT_THROW(classify_region(1.0, -1.0), ConfigError);
}

TEST(NmsAndThreshold, SingleSpike) {
    std::vector<double> resp(64, 0.0);
    resp[3 * 8 + 5] = 10.0;
    const CornerSet set = nms_and_threshold(resp, 8, 8, HarrisConfig{});
    ASSERT_EQ(set.corners.size(), 1u);
    EXPECT_EQ(set.corners[0].x, 5);
    EXPECT_EQ(set.corners[0].y, 3);
    EXPECT_DOUBLE_EQ(set.corners[0].score, 10.0);
}

TEST(NmsAndThreshold, PlateauTieGoesRowMajorFirst) {
    std::vector<double> resp(64, 0.0);
    resp[3 * 8 + 4] = 7.0;
    resp[3 * 8 + 5] = 7.0;
    resp[4 * 8 + 4] = 7.0;
    const CornerSet set = nms_and_threshold(resp, 8, 8, HarrisConfig{});
    ASSERT_EQ(set.corners.size(), 1u);
    EXPECT_EQ(set.corners[0].x, 4);
    EXPECT_EQ(set.corners[0].y, 3);
}

TEST(NmsAndThreshold, AllNegativeGivesEmptySet) {
    std::vector<double> resp(64, -1.0);
    EXPECT_TRUE(nms_and_threshold(resp, 8, 8, HarrisConfig{}).corners.empty());
}

TEST(NmsAndThreshold, ThresholdFractionApplies) {
    std::vector<double> resp(256, 0.0);
    resp[4 * 16 + 4] = 100.0;
    resp[10 * 16 + 10] = 0.5; // below 0.01 * 100 = 1
    HarrisConfig cfg;
    const CornerSet set = nms_and_threshold(resp, 16, 16, cfg);
    ASSERT_EQ(set.corners.size(), 1u);
    EXPECT_EQ(set.corners[0].x, 4);
}

TEST(CirclePerimeter, RadiusTwoIsTwelvePixelBresenhamRing) {
    const auto ring = circle_perimeter(2);
    ASSERT_EQ(ring.size(), 12u);
    const std::set<std::pair<int, int>> expected = {{2, 0},  {2, 1},   {1, 2},  {0, 2},
                                                    {-1, 2}, {-2, 1},  {-2, 0}, {-2, -1},
                                                    {-1, -2}, {0, -2}, {1, -2}, {2, -1}};
    const std::set<std::pair<int, int>> actual(ring.begin(), ring.end());
    EXPECT_EQ(actual, expected);
    // Opposition pairing: entry k + 6 is the point reflection of entry k.
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_EQ(ring[k].first, -ring[k + 6].first);
        EXPECT_EQ(ring[k].second, -ring[k + 6].second);
    }
}

TEST(FastLikeFilter, StraightLineCandidateRemoved) {
    EdgeMap edges = empty_edges(21, 21);
    for (int i = 0; i < 21; ++i) {
        edges.bits[i * 21 + 10] = 1; // vertical line through x = 10
    }
    CornerSet cands;
    cands.corners.push_back(Corner{10, 10, 1.0});
    EXPECT_TRUE(fast_like_filter(cands, edges).corners.empty());
}

TEST(FastLikeFilter, TwoPixelBandCandidateRemoved) {
    EdgeMap edges = empty_edges(21, 21);
    for (int i = 0; i < 21; ++i) {
        edges.bits[i * 21 + 9] = 1;
        edges.bits[i * 21 + 10] = 1;
    }
    CornerSet cands;
    cands.corners.push_back(Corner{10, 10, 1.0});
    EXPECT_TRUE(fast_like_filter(cands, edges).corners.empty());
}

TEST(FastLikeFilter, LJunctionCandidateKept) {
    EdgeMap edges = empty_edges(21, 21);
    for (int j = 10; j < 21; ++j) {
        edges.bits[10 * 21 + j] = 1; // arm to the right
    }
    for (int i = 10; i < 21; ++i) {
        edges.bits[i * 21 + 10] = 1; // arm downward
    }
    CornerSet cands;
    cands.corners.push_back(Corner{10, 10, 1.0});
    EXPECT_EQ(fast_like_filter(cands, edges).corners.size(), 1u);
}

TEST(FastLikeFilter, EmptyEdgeMapKeepsEverything) {
    CornerSet cands;
    cands.corners.push_back(Corner{3, 3, 1.0});
    cands.corners.push_back(Corner{10, 12, 2.0});
    EXPECT_EQ(fast_like_filter(cands, empty_edges(21, 21)).corners.size(), 2u);
}

TEST(FastLikeFilter, NeverAddsCandidates) {
    std::mt19937_64 rng(7);
    EdgeMap edges = empty_edges(32, 32);
    std::uniform_int_distribution<int> coin(0, 3);
    for (auto &b : edges.bits) {
        b = coin(rng) == 0;
    }
    CornerSet cands;
    std::uniform_int_distribution<int> pos(0, 31);
    for (int k = 0; k < 40; ++k) {
        cands.corners.push_back(Corner{pos(rng), pos(rng), 1.0});
    }
    EXPECT_LE(fast_like_filter(cands, edges).corners.size(), cands.corners.size());
}

TEST(HarrisScaling, ResponseScalesAsFourthPowerAndArgmaxInvariant) {
    std::mt19937_64 rng(11);
    const GrayImage img = random_image(16, 16, rng);
    const GradientField base = sobel_direct(img);
    const HarrisConfig cfg;
    const auto resp_base = harris_response(structure_tensor(base, cfg), cfg.kappa);
    const CornerSet corners_base = nms_and_threshold(resp_base, 16, 16, cfg);
    double max_abs = 0.0;
    for (double r : resp_base) {
        max_abs = std::max(max_abs, std::abs(r));
    }
    for (double s : {0.5, 3.0, 10.0}) {
        GradientField scaled = base;
        for (std::size_t p = 0; p < scaled.ix.size(); ++p) {
            scaled.ix[p] *= s;
            scaled.iy[p] *= s;
        }
        const auto resp = harris_response(structure_tensor(scaled, cfg), cfg.kappa);
        const double s4 = s * s * s * s;
        for (std::size_t p = 0; p < resp.size(); ++p) {
            const double expected = s4 * resp_base[p];
            const double denom = std::max(std::abs(expected), 1e-12 * s4 * max_abs);
            if (denom > 0.0) {
                EXPECT_LT(std::abs(resp[p] - expected) / denom, 1e-9);
            }
        }
        const CornerSet corners = nms_and_threshold(resp, 16, 16, cfg);
        ASSERT_EQ(corners.corners.size(), corners_base.corners.size());
        for (std::size_t k = 0; k < corners.corners.size(); ++k) {
            EXPECT_EQ(corners.corners[k].x, corners_base.corners[k].x);
            EXPECT_EQ(corners.corners[k].y, corners_base.corners[k].y);
        }
    }
}

TEST(Qhcd, SquareGivesExactlyFourVertexCorners) {
    const GrayImage img = square_image(64, 16, 16, 47, 47);
    const std::vector<std::pair<int, int>> truth = {{16, 16}, {47, 16}, {16, 47}, {47, 47}};
    for (Encoding enc : {Encoding::Qpie, Encoding::FrqiLinear}) {
        const CornerSet set = qhcd(img, enc, HarrisConfig{});
        ASSERT_EQ(set.corners.size(), 4u);
        EXPECT_EQ(set.source, CornerSource::QhcdSobel);
        for (const Corner &c : set.corners) {
            EXPECT_TRUE(within_radius_of_any(c, truth, 2.0));
        }
    }
}

TEST(Qhcd, ConstantImageGivesNoCorners) {
    EXPECT_TRUE(qhcd(constant_image(16, 16, 77), Encoding::Qpie, HarrisConfig{}).corners.empty());
}

TEST(Qhcd, NoDuplicateCoordinates) {
    const GrayImage img = square_image(64, 16, 16, 47, 47);
    const CornerSet set = qhcd(img, Encoding::Qpie, HarrisConfig{});
    std::set<std::pair<int, int>> seen;
    for (const Corner &c : set.corners) {
        EXPECT_TRUE(seen.emplace(c.x, c.y).second);
        EXPECT_GE(c.x, 0);
        EXPECT_LT(c.x, 64);
        EXPECT_GE(c.y, 0);
        EXPECT_LT(c.y, 64);
    }
}

TEST(ClassicalHarris, SquareGivesFourCorners) {
    const GrayImage img = square_image(64, 16, 16, 47, 47);
    const CornerSet set = classical_harris(img, HarrisConfig{});
    ASSERT_EQ(set.corners.size(), 4u);
    EXPECT_EQ(set.source, CornerSource::ClassicalHarris);
}

TEST(ClassicalHarris, ConstantImageEmpty) {
    EXPECT_TRUE(classical_harris(constant_image(16, 16, 8), HarrisConfig{}).corners.empty());
}

TEST(ClassicalHarris, AgreesWithQhcdOnSyntheticSquare) {
    const GrayImage img = square_image(64, 20, 12, 51, 43);
    auto key = [](const Corner &c) { return std::make_pair(c.y, c.x); };
    CornerSet a = classical_harris(img, HarrisConfig{});
    CornerSet b = qhcd(img, Encoding::Qpie, HarrisConfig{});
    ASSERT_EQ(a.corners.size(), b.corners.size());
    std::sort(a.corners.begin(), a.corners.end(),
              [&](const Corner &l, const Corner &r) { return key(l) < key(r); });
    std::sort(b.corners.begin(), b.corners.end(),
              [&](const Corner &l, const Corner &r) { return key(l) < key(r); });
    for (std::size_t k = 0; k < a.corners.size(); ++k) {
        EXPECT_EQ(a.corners[k].x, b.corners[k].x);
        EXPECT_EQ(a.corners[k].y, b.corners[k].y);
    }
}

TEST(RotationConsistency, QuarterTurnMapsCorners) {
    const GrayImage img = square_image(64, 16, 16, 47, 47);
    // 90-degree counterclockwise rotation of the raster.
    GrayImage rot = constant_image(64, 64, 0);
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
            rot.at(63 - j, i) = img.at(i, j);
        }
    }
    auto normalize = [](CornerSet set) {
        std::set<std::pair<int, int>> out;
        for (const Corner &c : set.corners) {
            out.emplace(c.x, c.y);
        }
        return out;
    };
    const auto base = normalize(classical_harris(img, HarrisConfig{}));
    const auto rotated = normalize(classical_harris(rot, HarrisConfig{}));
    std::set<std::pair<int, int>> mapped;
    for (const auto &[x, y] : base) {
        mapped.emplace(y, 63 - x); // (x, y) -> (y, 63 - x) under the same turn
    }
    EXPECT_EQ(rotated, mapped);
}

TEST(QhedCornerHeuristic, SquareCandidatesClusterAtVertices) {
    const GrayImage img = square_image(64, 16, 16, 47, 47);
    const std::vector<std::pair<int, int>> truth = {{16, 16}, {47, 16}, {16, 47}, {47, 47}};
    for (Encoding enc : {Encoding::Qpie, Encoding::FrqiLinear}) {
        const CornerSet set = qhed_corner_heuristic(img, enc, HarrisConfig{});
        EXPECT_EQ(set.source, CornerSource::QhedHeuristic);
        ASSERT_FALSE(set.corners.empty());
        for (const Corner &c : set.corners) {
            EXPECT_TRUE(within_radius_of_any(c, truth, 3.0))
                << "stray candidate at " << c.x << "," << c.y;
        }
    }
}

TEST(QhedCornerHeuristic, SingleStraightEdgeYieldsNothing) {
    GrayImage img = constant_image(32, 32, 0);
    for (int i = 0; i < 32; ++i) {
        for (int j = 16; j < 32; ++j) {
            img.at(i, j) = 255;
        }
    }
    const CornerSet set = qhed_corner_heuristic(img, Encoding::Qpie, HarrisConfig{});
    EXPECT_LE(set.corners.size(), 1u); // no bidirectional response along a clean step
}
