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

#ifndef QGRAD_QPIE_HPP
#define QGRAD_QPIE_HPP

#include "qgrad/image.hpp"
#include "qgrad/statevector.hpp"

namespace qgrad {

/// Amplitude-encoded image: amplitude i is pixel i of the row-major
/// flattening divided by the retained L2 norm, zero-padded to 2^r with
/// r = ceil(log2(width * height)).
struct QpieState {
    StateVector state;
    int width = 0;
    int height = 0;
    int r = 0;
    double l2_norm = 0.0;
};

QpieState qpie_encode(const ImageVector &v);

/// Noiseless inverse: values[i] = amplitude[i] * l2_norm, padding dropped.
ImageVector qpie_decode_exact(const QpieState &q);

/// Shot-based estimate: values[i] = sqrt(counts[i] / shots) * norm.
/// Signs are lost under the square root; pixel intensities are non-negative
/// by construction so nothing is lost for image data.
ImageVector qpie_decode_counts(const CountsMap &counts, double norm, int width, int height);

} // namespace qgrad

#endif
