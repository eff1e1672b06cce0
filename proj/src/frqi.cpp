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

#include "qgrad/frqi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

} // namespace

std::vector<double> ConditionalImageState::normalized() const {
    std::vector<double> out(values.size());
    const double inv = 1.0 / normalizer;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = values[i] * inv;
    }
    return out;
}

double frqi_angle(int pixel, int bit_depth, FrqiMode mode) {
    const int maxv = (1 << bit_depth) - 1;
    if (pixel < 0 || pixel > maxv) {
        throw ConfigError("frqi_angle: pixel " + std::to_string(pixel) + " outside [0, " +
                          std::to_string(maxv) + "]");
    }
    const double x = static_cast<double>(pixel) / maxv;
    return mode == FrqiMode::Linear ? x * kHalfPi : std::asin(x);
}

FrqiState frqi_encode(const GrayImage &img, FrqiMode mode) {
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    if (n < 2 || !is_power_of_two(n)) {
        throw ConfigError("frqi_encode: width*height must be a power of two >= 2");
    }
    FrqiState f;
    f.width = img.width;
    f.height = img.height;
    f.bit_depth = img.bit_depth;
    f.mode = mode;
    f.r = 0;
    while ((std::size_t{1} << f.r) < n) {
        ++f.r;
    }
    f.angles.resize(n);
    std::vector<double> amps(2 * n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = frqi_angle(img.pixels[i], img.bit_depth, mode);
        f.angles[i] = theta;
        amps[2 * i] = std::cos(theta) * inv_sqrt_n;
        amps[2 * i + 1] = std::sin(theta) * inv_sqrt_n;
    }
    f.state = from_amplitudes(amps);
    return f;
}

ImageVector frqi_decode_counts(const CountsMap &counts, int bit_depth, int r, FrqiMode mode,
                               int width, int height) {
    if (counts.shots == 0) {
        throw ConfigError("frqi_decode_counts: empty counts");
    }
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (n != (std::size_t{1} << r)) {
        throw ConfigError("frqi_decode_counts: width*height must equal 2^r");
    }
    const double maxv = static_cast<double>((1 << bit_depth) - 1);
    const double scale = static_cast<double>(std::size_t{1} << r) / static_cast<double>(counts.shots);
    ImageVector v;
    v.width = width;
    v.height = height;
    v.values.assign(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = counts.counts.find(2 * i + 1);
        const double n1i = (it == counts.counts.end()) ? 0.0 : static_cast<double>(it->second);
        const double sin_est = std::min(1.0, std::sqrt(n1i * scale));
        double pixel;
        if (mode == FrqiMode::Arcsin) {
            pixel = maxv * sin_est;
        } else {
            pixel = std::asin(sin_est) * 2.0 * maxv / std::numbers::pi;
        }
        pixel = std::clamp(pixel, 0.0, maxv);
        v.values[i] = pixel;
        sum += pixel * pixel;
    }
    v.l2_norm = std::sqrt(sum);
    return v;
}

ConditionalImageState frqi_conditional(const FrqiState &f, int outcome) {
    PostSelection ps = post_select_ancilla(f.state, outcome);
    if (ps.probability <= 0.0) {
        throw DegenerateInputError("frqi_conditional: branch has zero probability");
    }
    // post_select keeps the 1/sqrt(2^r) layout prefactor; undo it so values
    // are the raw sines/cosines.
    const double root_n = std::sqrt(static_cast<double>(std::size_t{1} << f.r));
    ConditionalImageState c;
    c.branch = outcome;
    c.values.resize(ps.projected.size());
    for (std::size_t i = 0; i < ps.projected.size(); ++i) {
        c.values[i] = ps.projected[i] * root_n;
    }
    c.normalizer = std::sqrt(ps.probability) * root_n;
    return c;
}

double rgb_angle(int red, int green, int blue, int bit_depth) {
    const int maxv = (1 << bit_depth) - 1;
    for (int channel : {red, green, blue}) {
        if (channel < 0 || channel > maxv) {
            throw ConfigError("rgb_angle: channel value outside [0, 2^b - 1]");
        }
    }
    const double base = static_cast<double>(maxv);
    const double arg = red / base + green / (base * base) + blue / (base * base * base);
    if (arg > 1.0) {
        throw ConfigError("rgb_angle: encoded value exceeds the arcsin domain");
    }
    return std::asin(arg);
}

RgbTriple rgb_decode(double angle, int bit_depth) {
    if (angle < 0.0 || angle > kHalfPi) {
        throw ConfigError("rgb_decode: angle outside [0, pi/2]");
    }
    const long long base = (1LL << bit_depth) - 1;
    const long long total = std::llround(std::sin(angle) * base * base * base);
    RgbTriple t;
    t.red = static_cast<int>(total / (base * base));
    const long long rem = total % (base * base);
    t.green = static_cast<int>(rem / base);
    t.blue = static_cast<int>(rem % base);
    return t;
}

} // namespace qgrad
