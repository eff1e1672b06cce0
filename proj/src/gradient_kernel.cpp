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

#include "qgrad/gradient_kernel.hpp"

#include <cmath>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

// The full kernel: attach a |+> ancilla on the low bit, shift, flip the
// ancilla, shift again, interfere with H, keep the ancilla-1 branch. The
// surviving amplitudes are (c_i - c_{i+2})/2 in cyclic order.
Lag2Result run_kernel(const StateVector &input, ShiftImpl impl) {
    StateVector s = tensor_with_plus_ancilla(input);
    if (impl == ShiftImpl::GateCascade) {
        const GateSequence shift = build_shift_circuit(s.qubit_count);
        s = apply_gate_sequence(shift, s);
        s = x_on_ancilla(s);
        s = apply_gate_sequence(shift, s);
    } else {
        s = cyclic_shift(s);
        s = x_on_ancilla(s);
        s = cyclic_shift(s);
    }
    s = h_on_ancilla(s);
    PostSelection ps = post_select_ancilla(s, 1);
    Lag2Result lr;
    lr.raw = std::move(ps.projected);
    lr.branch_probability = ps.probability;
    return lr;
}

} // namespace

Lag2Result lag2_qpie(const QpieState &q, ShiftImpl impl) {
    Lag2Result lr = run_kernel(q.state, impl);
    lr.scale = 2.0 * q.l2_norm;
    lr.domain = DiffDomain::Intensity;
    return lr;
}

Lag2Result lag2_frqi(const FrqiState &f, int outcome, ShiftImpl impl) {
    ConditionalImageState cond = frqi_conditional(f, outcome);
    Lag2Result lr = run_kernel(from_amplitudes(cond.normalized()), impl);
    lr.scale = 2.0 * cond.normalizer;
    lr.domain = (outcome == 1) ? DiffDomain::Sine : DiffDomain::Cosine;
    return lr;
}

std::vector<double> lag2_oracle(std::span<const double> values, int k) {
    if (k < 1) {
        throw ConfigError("lag2_oracle: k must be >= 1");
    }
    const std::size_t n = values.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = values[i] - values[(i + static_cast<std::size_t>(k)) % n];
    }
    return out;
}

std::vector<double> rescale_to_intensity(const Lag2Result &lr) {
    if (lr.domain != DiffDomain::Intensity) {
        throw ConfigError("rescale_to_intensity: sine/cosine-domain differences have no exact "
                          "intensity inverse");
    }
    std::vector<double> out(lr.raw.size());
    for (std::size_t i = 0; i < lr.raw.size(); ++i) {
        out[i] = lr.raw[i] * lr.scale;
    }
    return out;
}

namespace {

// Rescaled kernel output for one flattening. QPIE rescales to intensity
// units; FRQI-linear stays sine-domain (raw * scale = sin(theta_i) -
// sin(theta_{i+2})). A constant image short-circuits to all-zero
// differences: the kernel branch has probability 0 and carries no signal.
std::vector<double> kernel_diffs(const GrayImage &img, Encoding encoding, ShiftImpl impl) {
    const ImageVector vec = vectorize(img);
    if (encoding == Encoding::Qpie) {
        const QpieState q = qpie_encode(vec);
        Lag2Result lr = lag2_qpie(q, impl);
        if (lr.degenerate()) {
            return std::vector<double>(vec.values.size(), 0.0);
        }
        std::vector<double> out = rescale_to_intensity(lr);
        out.resize(vec.values.size()); // drop zero padding
        return out;
    }
    const FrqiState f = frqi_encode(img, FrqiMode::Linear);
    Lag2Result lr = lag2_frqi(f, 1, impl);
    if (lr.degenerate()) {
        return std::vector<double>(vec.values.size(), 0.0);
    }
    std::vector<double> out(lr.raw.size());
    for (std::size_t i = 0; i < lr.raw.size(); ++i) {
        out[i] = lr.raw[i] * lr.scale;
    }
    return out;
}

} // namespace

DiffPair lag2_both_axes(const GrayImage &img, Encoding encoding, ShiftImpl impl) {
    if (encoding == Encoding::FrqiArcsin) {
        throw ConfigError("lag2_both_axes: gradient pipelines use qpie or frqi-linear");
    }
    const int w = img.width;
    const int h = img.height;
    DiffPair pair;

    const std::vector<double> dx_flat = kernel_diffs(img, encoding, impl);
    pair.dx.width = w;
    pair.dx.height = h;
    pair.dx.axis = DiffAxis::X;
    pair.dx.values.assign(static_cast<std::size_t>(w) * h, 0.0);
    pair.dx.valid.assign(static_cast<std::size_t>(w) * h, 0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * w + j;
            if (j + 2 < w) {
                pair.dx.values[p] = dx_flat[p];
                pair.dx.valid[p] = 1;
            }
        }
    }

    const std::vector<double> dy_flat = kernel_diffs(transpose(img), encoding, impl);
    pair.dy.width = w;
    pair.dy.height = h;
    pair.dy.axis = DiffAxis::Y;
    pair.dy.values.assign(static_cast<std::size_t>(w) * h, 0.0);
    pair.dy.valid.assign(static_cast<std::size_t>(w) * h, 0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            if (i + 2 < h) {
                // transposed flattening: entry (j, i) of the h-wide raster
                const std::size_t pt = static_cast<std::size_t>(j) * h + i;
                const std::size_t p = static_cast<std::size_t>(i) * w + j;
                pair.dy.values[p] = dy_flat[pt];
                pair.dy.valid[p] = 1;
            }
        }
    }
    return pair;
}

} // namespace qgrad
