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

#ifndef QGRAD_FRQI_HPP
#define QGRAD_FRQI_HPP

#include <vector>

#include "qgrad/image.hpp"
#include "qgrad/statevector.hpp"

namespace qgrad {

/// Pixel-to-angle map. Linear spreads intensities uniformly over [0, pi/2]
/// and keeps angle differences proportional to intensity differences, which
/// is what gradient work needs; Arcsin encodes the normalized intensity
/// directly into the |1> amplitude, which is what reconstruction wants.
enum class FrqiMode { Linear, Arcsin };

/// Angle-encoded image over r position qubits plus one intensity ancilla on
/// the least-significant bit: amplitude[2i + 0] = cos(theta_i)/sqrt(2^r),
/// amplitude[2i + 1] = sin(theta_i)/sqrt(2^r).
struct FrqiState {
    StateVector state;
    int width = 0;
    int height = 0;
    int r = 0;
    int bit_depth = 8;
    FrqiMode mode = FrqiMode::Linear;
    std::vector<double> angles;
};

/// One ancilla-measurement branch: `values` are the raw sin(theta_i) (outcome
/// 1) or cos(theta_i) (outcome 0); dividing by `normalizer` gives the
/// post-measurement unit state.
struct ConditionalImageState {
    std::vector<double> values;
    int branch = 0;
    double normalizer = 0.0;

    std::vector<double> normalized() const;
};

double frqi_angle(int pixel, int bit_depth, FrqiMode mode);

/// Requires width * height to be a power of two; resize upstream otherwise.
FrqiState frqi_encode(const GrayImage &img, FrqiMode mode);

/// Pixel estimates from ancilla-1 counts (basis index 2i + 1):
///   arcsin: pixel = (2^b - 1) * sqrt(2^r * N_1i / N)
///   linear: sin(theta) is estimated the same way, then inverted through
///           theta = asin(est), pixel = theta * 2 (2^b - 1) / pi.
/// Estimates are clamped to [0, 2^b - 1].
ImageVector frqi_decode_counts(const CountsMap &counts, int bit_depth, int r, FrqiMode mode,
                               int width, int height);

ConditionalImageState frqi_conditional(const FrqiState &f, int outcome);

/// theta = arcsin(R/(2^b-1) + G/(2^b-1)^2 + B/(2^b-1)^3). The argument can
/// exceed 1 for large channel combinations; that is rejected rather than
/// clamped.
double rgb_angle(int red, int green, int blue, int bit_depth);

struct RgbTriple {
    int red = 0;
    int green = 0;
    int blue = 0;
};

/// Digits of round((2^b-1)^3 sin(theta)) in base (2^b-1), most significant
/// first.
RgbTriple rgb_decode(double angle, int bit_depth);

} // namespace qgrad

#endif
