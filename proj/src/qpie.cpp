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

#include "qgrad/qpie.hpp"

#include <cmath>

#include "qgrad/errors.hpp"

namespace qgrad {

QpieState qpie_encode(const ImageVector &v) {
    if (v.l2_norm <= 0.0) {
        throw DegenerateInputError("qpie_encode: all-zero image has no amplitude encoding");
    }
    const std::size_t n = v.values.size();
    if (n < 2) {
        throw ConfigError("qpie_encode: need at least 2 pixels");
    }
    int r = 0;
    while ((std::size_t{1} << r) < n) {
        ++r;
    }
    std::vector<double> padded(std::size_t{1} << r, 0.0);
    std::copy(v.values.begin(), v.values.end(), padded.begin());
    QpieState q;
    q.state = from_amplitudes(padded);
    q.width = v.width;
    q.height = v.height;
    q.r = r;
    q.l2_norm = v.l2_norm;
    return q;
}

ImageVector qpie_decode_exact(const QpieState &q) {
    ImageVector v;
    v.width = q.width;
    v.height = q.height;
    const std::size_t n = static_cast<std::size_t>(q.width) * q.height;
    v.values.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v.values[i] = q.state.amplitudes[i] * q.l2_norm;
        sum += v.values[i] * v.values[i];
    }
    v.l2_norm = std::sqrt(sum);
    return v;
}

ImageVector qpie_decode_counts(const CountsMap &counts, double norm, int width, int height) {
    if (counts.shots == 0) {
        throw ConfigError("qpie_decode_counts: empty counts");
    }
    ImageVector v;
    v.width = width;
    v.height = height;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    v.values.assign(n, 0.0);
    const double inv_shots = 1.0 / static_cast<double>(counts.shots);
    double sum = 0.0;
    for (const auto &[index, count] : counts.counts) {
        if (index >= n) {
            continue; // padding amplitudes are zero; stray counts are impossible anyway
        }
        const double value = std::sqrt(static_cast<double>(count) * inv_shots) * norm;
        v.values[index] = value;
        sum += value * value;
    }
    v.l2_norm = std::sqrt(sum);
    return v;
}

} // namespace qgrad
