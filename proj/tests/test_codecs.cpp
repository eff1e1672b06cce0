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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgrad/errors.hpp"
#include "qgrad/frqi.hpp"
#include "qgrad/qpie.hpp"
#include "test_helpers.hpp"

using namespace qgrad;
using qgrad::testing::constant_image;
using qgrad::testing::random_image;

namespace {

ImageVector make_vector(std::vector<double> values, int width, int height) {
    ImageVector v;
    v.values = std::move(values);
    v.width = width;
    v.height = height;
    double sum = 0.0;
    for (double x : v.values) {
        sum += x * x;
    }
    v.l2_norm = std::sqrt(sum);
    return v;
}

} // namespace

// ---- QPIE ------------------------------------------------------------------

TEST(QpieEncode, NormalizationAndMetadata) {
    const QpieState q = qpie_encode(make_vector({3, 0, 0, 4}, 2, 2));
    EXPECT_EQ(q.r, 2);
    EXPECT_NEAR(q.l2_norm, 5.0, 1e-15);
    EXPECT_NEAR(q.state.amplitudes[0], 0.6, 1e-15);
    EXPECT_NEAR(q.state.amplitudes[3], 0.8, 1e-15);
}

TEST(QpieEncode, UniformImage) {
    const QpieState q = qpie_encode(make_vector({9, 9, 9, 9}, 2, 2));
    EXPECT_NEAR(q.l2_norm, 18.0, 1e-15);
    for (double a : q.state.amplitudes) {
        EXPECT_NEAR(a, 0.5, 1e-15);
    }
}

TEST(QpieEncode, PadsToPowerOfTwo) {
    const QpieState q = qpie_encode(make_vector({1, 2, 3}, 3, 1));
    EXPECT_EQ(q.r, 2);
    ASSERT_EQ(q.state.size(), 4u);
    EXPECT_NEAR(q.state.amplitudes[3], 0.0, 1e-15);
}

TEST(QpieEncode, RejectsZeroImage) {
    EXPECT_THROW(qpie_encode(make_vector({0, 0, 0, 0}, 2, 2)), DegenerateInputError);
}

TEST(QpieDecodeExact, Roundtrip345) {
    const ImageVector v = make_vector({3, 0, 0, 4}, 2, 2);
    const ImageVector back = qpie_decode_exact(qpie_encode(v));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(back.values[i], v.values[i], 1e-12);
    }
    EXPECT_NEAR(back.l2_norm, v.l2_norm, 1e-12);
}

TEST(QpieDecodeExact, RandomRoundtripProperty) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const ImageVector v = vectorize(random_image(8, 8, rng, 1, 255));
        const ImageVector back = qpie_decode_exact(qpie_encode(v));
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            EXPECT_NEAR(back.values[i], v.values[i], 1e-12);
        }
    }
}

TEST(QpieDecodeExact, DropsPaddingTail) {
    const ImageVector back = qpie_decode_exact(qpie_encode(make_vector({1, 2, 3}, 3, 1)));
    EXPECT_EQ(back.values.size(), 3u);
}

TEST(QpieDecodeCounts, AllShotsOnOneIndex) {
    CountsMap counts;
    counts.shots = 1000;
    counts.counts[0] = 1000;
    const ImageVector v = qpie_decode_counts(counts, 5.0, 2, 2);
    EXPECT_NEAR(v.values[0], 5.0, 1e-12);
    EXPECT_NEAR(v.values[1], 0.0, 1e-12);
}

TEST(QpieDecodeCounts, ExactProbabilityCountsInvert) {
    // N_i = c_i^2 N for [0.6, 0, 0, 0.8], norm 5 -> exact [3, 0, 0, 4].
    CountsMap counts;
    counts.shots = 10000;
    counts.counts[0] = 3600;
    counts.counts[3] = 6400;
    const ImageVector v = qpie_decode_counts(counts, 5.0, 2, 2);
    EXPECT_NEAR(v.values[0], 3.0, 1e-12);
    EXPECT_NEAR(v.values[1], 0.0, 1e-12);
    EXPECT_NEAR(v.values[2], 0.0, 1e-12);
    EXPECT_NEAR(v.values[3], 4.0, 1e-12);
}

TEST(QpieDecodeCounts, ShotConsistencyAtTenMillion) {
    // 4x4 image, 1e7 shots: every pixel within half an intensity level.
    std::mt19937_64 rng(9);
    const GrayImage img = random_image(4, 4, rng, 10, 250);
    const ImageVector v = vectorize(img);
    const QpieState q = qpie_encode(v);
    const CountsMap counts = sample_measurements(q.state, 10000000, 4242);
    const ImageVector est = qpie_decode_counts(counts, q.l2_norm, 4, 4);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        EXPECT_LT(std::abs(est.values[i] - v.values[i]), 0.5);
    }
}

// ---- FRQI ------------------------------------------------------------------

TEST(FrqiAngle, Endpoints) {
    EXPECT_DOUBLE_EQ(frqi_angle(0, 8, FrqiMode::Linear), 0.0);
    EXPECT_DOUBLE_EQ(frqi_angle(0, 8, FrqiMode::Arcsin), 0.0);
    EXPECT_NEAR(frqi_angle(255, 8, FrqiMode::Linear), std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(frqi_angle(255, 8, FrqiMode::Arcsin), std::numbers::pi / 2, 1e-15);
}

TEST(FrqiAngle, LinearFormula) {
    EXPECT_NEAR(frqi_angle(51, 8, FrqiMode::Linear), std::numbers::pi / 10, 1e-15);
}

TEST(FrqiAngle, RejectsOutOfRange) {
    EXPECT_THROW(frqi_angle(-1, 8, FrqiMode::Linear), ConfigError);
    EXPECT_THROW(frqi_angle(256, 8, FrqiMode::Linear), ConfigError);
}

TEST(FrqiAngle, LinearDifferencesAreProportional) {
    const double slope = std::numbers::pi / (2.0 * 255.0);
    for (int u : {0, 13, 100, 255}) {
        for (int v : {5, 77, 200}) {
            const double lhs =
                frqi_angle(u, 8, FrqiMode::Linear) - frqi_angle(v, 8, FrqiMode::Linear);
            EXPECT_NEAR(lhs, (u - v) * slope, 1e-12);
        }
    }
}

TEST(FrqiAngle, ArcsinSensitivityMatchesDerivative) {
    // Central difference with h = 1 intensity level against the analytic
    // d theta / dv = 1 / ((2^b - 1) sqrt(1 - (v / (2^b - 1))^2)).
    for (int v : {10, 50, 100, 128, 200}) {
        const double fd = (frqi_angle(v + 1, 8, FrqiMode::Arcsin) -
                           frqi_angle(v - 1, 8, FrqiMode::Arcsin)) /
                          2.0;
        const double x = v / 255.0;
        const double analytic = 1.0 / (255.0 * std::sqrt(1.0 - x * x));
        EXPECT_NEAR(fd, analytic, 1e-6);
    }
}

TEST(FrqiEncode, BlackAndWhite) {
    const FrqiState black = frqi_encode(constant_image(2, 2, 0), FrqiMode::Linear);
    ASSERT_EQ(black.state.size(), 8u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(black.state.amplitudes[2 * i], 0.5, 1e-12);     // cos(0)/2
        EXPECT_NEAR(black.state.amplitudes[2 * i + 1], 0.0, 1e-12); // sin(0)/2
    }
    const FrqiState white = frqi_encode(constant_image(2, 2, 255), FrqiMode::Linear);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(white.state.amplitudes[2 * i], 0.0, 1e-12);
        EXPECT_NEAR(white.state.amplitudes[2 * i + 1], 0.5, 1e-12);
    }
}

TEST(FrqiEncode, InterleavedLayout) {
    GrayImage img = constant_image(2, 2, 0);
    img.pixels = {0, 255, 0, 255};
    const FrqiState f = frqi_encode(img, FrqiMode::Linear);
    const std::vector<double> expected = {0.5, 0, 0, 0.5, 0.5, 0, 0, 0.5};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(f.state.amplitudes[i], expected[i], 1e-12);
    }
}

TEST(FrqiEncode, AnglesRecoverableFromAmplitudes) {
    std::mt19937_64 rng(11);
    const GrayImage img = random_image(4, 4, rng);
    for (FrqiMode mode : {FrqiMode::Linear, FrqiMode::Arcsin}) {
        const FrqiState f = frqi_encode(img, mode);
        EXPECT_LT(std::abs(f.state.norm() - 1.0), 1e-12);
        for (std::size_t i = 0; i < f.angles.size(); ++i) {
            const double theta =
                std::atan2(f.state.amplitudes[2 * i + 1], f.state.amplitudes[2 * i]);
            EXPECT_NEAR(theta, f.angles[i], 1e-10);
        }
    }
}

TEST(FrqiEncode, RejectsNonPowerOfTwo) {
    EXPECT_THROW(frqi_encode(constant_image(3, 1, 1), FrqiMode::Linear), ConfigError);
}

TEST(FrqiDecodeCounts, ExactWhiteAndBlack) {
    // All-white arcsin: every basis state is |1>|i>, N_1i = N / 2^r.
    const FrqiState white = frqi_encode(constant_image(2, 2, 255), FrqiMode::Arcsin);
    const CountsMap counts = sample_measurements(white.state, 40000, 3);
    const ImageVector v = frqi_decode_counts(counts, 8, white.r, FrqiMode::Arcsin, 2, 2);
    for (double x : v.values) {
        EXPECT_NEAR(x, 255.0, 20.0); // sqrt of multinomial estimate, generous band
    }
    const FrqiState black = frqi_encode(constant_image(2, 2, 0), FrqiMode::Arcsin);
    const CountsMap counts0 = sample_measurements(black.state, 1000, 3);
    const ImageVector v0 = frqi_decode_counts(counts0, 8, black.r, FrqiMode::Arcsin, 2, 2);
    for (double x : v0.values) {
        EXPECT_DOUBLE_EQ(x, 0.0);
    }
}

TEST(FrqiDecodeCounts, LinearModeInvertsAngleMap) {
    // Feed exact probabilities as counts: N_1i = N sin^2(theta_i) / 2^r.
    GrayImage img = constant_image(2, 2, 0);
    img.pixels = {0, 51, 153, 255};
    const FrqiState f = frqi_encode(img, FrqiMode::Linear);
    CountsMap counts;
    counts.shots = 100000000;
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = f.state.amplitudes[2 * i + 1] * f.state.amplitudes[2 * i + 1];
        counts.counts[2 * i + 1] = static_cast<std::uint64_t>(std::llround(p * counts.shots));
    }
    const ImageVector v = frqi_decode_counts(counts, 8, f.r, FrqiMode::Linear, 2, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(v.values[i], img.pixels[i], 0.01);
    }
}

TEST(FrqiConditional, AllWhiteSines) {
    const FrqiState white = frqi_encode(constant_image(2, 2, 255), FrqiMode::Linear);
    const ConditionalImageState c = frqi_conditional(white, 1);
    EXPECT_NEAR(c.normalizer, 2.0, 1e-12); // sqrt(mn) with all sines 1
    for (double v : c.values) {
        EXPECT_NEAR(v, 1.0, 1e-12);
    }
}

TEST(FrqiConditional, AllBlackBranchIsDegenerate) {
    const FrqiState black = frqi_encode(constant_image(2, 2, 0), FrqiMode::Linear);
    EXPECT_THROW(frqi_conditional(black, 1), DegenerateInputError);
}

TEST(FrqiConditional, MixedBranchProjection) {
    GrayImage img = constant_image(2, 2, 0);
    img.pixels = {0, 255, 0, 255};
    const ConditionalImageState c = frqi_conditional(frqi_encode(img, FrqiMode::Linear), 1);
    const std::vector<double> normalized = c.normalized();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(normalized[0], 0.0, 1e-12);
    EXPECT_NEAR(normalized[1], inv_sqrt2, 1e-12);
    EXPECT_NEAR(normalized[2], 0.0, 1e-12);
    EXPECT_NEAR(normalized[3], inv_sqrt2, 1e-12);
    double norm = 0.0;
    for (double v : normalized) {
        norm += v * v;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
}

// ---- RGB angle codec ---------------------------------------------------------

TEST(RgbAngle, Endpoints) {
    EXPECT_DOUBLE_EQ(rgb_angle(0, 0, 0, 8), 0.0);
    EXPECT_NEAR(rgb_angle(255, 0, 0, 8), std::numbers::pi / 2, 1e-15);
}

TEST(RgbAngle, RejectsOverflowingArgument) {
    EXPECT_THROW(rgb_angle(255, 1, 0, 8), ConfigError);
    EXPECT_THROW(rgb_angle(256, 0, 0, 8), ConfigError);
}

TEST(RgbDecode, Endpoints) {
    const RgbTriple black = rgb_decode(0.0, 8);
    EXPECT_EQ(black.red, 0);
    EXPECT_EQ(black.green, 0);
    EXPECT_EQ(black.blue, 0);
    const RgbTriple red = rgb_decode(std::numbers::pi / 2, 8);
    EXPECT_EQ(red.red, 255);
    EXPECT_EQ(red.green, 0);
    EXPECT_EQ(red.blue, 0);
}

TEST(RgbDecode, RoundtripProperty) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> dist(0, 254);
    for (int trial = 0; trial < 1000; ++trial) {
        const int r = dist(rng);
        const int g = dist(rng);
        const int b = dist(rng);
        const RgbTriple t = rgb_decode(rgb_angle(r, g, b, 8), 8);
        EXPECT_EQ(t.red, r);
        EXPECT_EQ(t.green, g);
        EXPECT_EQ(t.blue, b);
    }
}
