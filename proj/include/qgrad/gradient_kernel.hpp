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

#ifndef QGRAD_GRADIENT_KERNEL_HPP
#define QGRAD_GRADIENT_KERNEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qgrad/frqi.hpp"
#include "qgrad/image.hpp"
#include "qgrad/qpie.hpp"

namespace qgrad {

enum class DiffDomain { Intensity, Sine, Cosine };

/// Whether the two amplitude shifts in the kernel run as a direct index
/// permutation or through the multi-controlled-X decomposition. Both paths
/// produce identical states; the cascade exists so the decomposition can be
/// validated end to end.
enum class ShiftImpl { Permutation, GateCascade };

/// Post-selected output of the lag-2 kernel.
///
///   raw[i]  = (c_i - c_{(i+2) mod 2^r}) / 2   (unnormalized branch)
///   scale   = factor mapping raw back to the input domain
///             (2 * l2_norm for QPIE, 2 * branch normalizer for FRQI)
///
/// The raw entries telescope to zero over the cyclic index, and
/// branch_probability equals their squared sum.
struct Lag2Result {
    std::vector<double> raw;
    double branch_probability = 0.0;
    double scale = 0.0;
    DiffDomain domain = DiffDomain::Intensity;

    bool degenerate() const { return branch_probability <= 1e-300; }
};

/// Runs ancilla-plus, shift, ancilla-X, shift, ancilla-H and keeps the
/// ancilla-1 branch.
Lag2Result lag2_qpie(const QpieState &q, ShiftImpl impl = ShiftImpl::Permutation);

/// Same kernel on the ancilla-measurement branch of an FRQI state. The
/// differences come out in sine (outcome 1) or cosine (outcome 0) of the
/// pixel angles; there is no exact inverse back to intensity differences, so
/// the result stays tagged with its domain.
Lag2Result lag2_frqi(const FrqiState &f, int outcome, ShiftImpl impl = ShiftImpl::Permutation);

/// Brute-force cyclic differences out[i] = v[i] - v[(i+k) mod n]; the
/// independent reference both quantum paths are checked against.
std::vector<double> lag2_oracle(std::span<const double> values, int k);

/// out[i] = raw[i] * scale, i.e. exact I_vec(i) - I_vec((i+2) mod N).
/// Only the intensity domain (QPIE path) admits this; sine/cosine results
/// are rejected.
std::vector<double> rescale_to_intensity(const Lag2Result &lr);

enum class DiffAxis { X, Y };

/// Lag-2 differences arranged on the pixel grid. The circuit wraps
/// cyclically, so entries whose i+2 partner crosses a row boundary (axis X)
/// or the bottom rows (axis Y) are not gradients; they are masked invalid
/// and carry no meaning.
struct DiffMap {
    int width = 0;
    int height = 0;
    DiffAxis axis = DiffAxis::X;
    std::vector<double> values;       // row-major
    std::vector<std::uint8_t> valid;  // row-major

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    bool valid_at(int row, int col) const {
        return valid[static_cast<std::size_t>(row) * width + col] != 0;
    }
};

enum class Encoding { Qpie, FrqiLinear, FrqiArcsin };

struct DiffPair {
    DiffMap dx;
    DiffMap dy;
};

/// X differences from the image's flattening, Y differences from the
/// transposed image mapped back:
///   dx(i, j) = I(i, j) - I(i, j+2)   valid for j <= width - 3
///   dy(i, j) = I(i, j) - I(i+2, j)   valid for i <= height - 3
/// QPIE values are in intensity units; FRQI-linear values are sine-domain.
DiffPair lag2_both_axes(const GrayImage &img, Encoding encoding,
                        ShiftImpl impl = ShiftImpl::Permutation);

} // namespace qgrad

#endif
