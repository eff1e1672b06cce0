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

#include "qgrad/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

namespace {

constexpr double kNormTolerance = 1e-12;

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

int log2_exact(std::size_t n) {
    int q = 0;
    while ((std::size_t{1} << q) < n) {
        ++q;
    }
    return q;
}

void ensure_normalized(const StateVector &s, const char *context) {
    if (std::abs(s.norm() - 1.0) >= kNormTolerance) {
        throw std::logic_error(std::string("norm conservation violated in ") + context);
    }
}

} // namespace

double StateVector::norm() const {
    double sum = 0.0;
    for (double a : amplitudes) {
        sum += a * a;
    }
    return std::sqrt(sum);
}

StateVector from_amplitudes(std::span<const double> values) {
    if (values.size() < 2 || !is_power_of_two(values.size())) {
        throw ConfigError("from_amplitudes: length must be a power of two >= 2, got " +
                          std::to_string(values.size()));
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v * v;
    }
    if (sum <= 0.0) {
        throw DegenerateInputError("from_amplitudes: all-zero vector cannot be normalized");
    }
    const double inv = 1.0 / std::sqrt(sum);
    StateVector s;
    s.qubit_count = log2_exact(values.size());
    s.amplitudes.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.amplitudes[i] = values[i] * inv;
    }
    ensure_normalized(s, "from_amplitudes");
    return s;
}

StateVector tensor_with_plus_ancilla(const StateVector &s) {
    static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
    StateVector out;
    out.qubit_count = s.qubit_count + 1;
    out.amplitudes.resize(s.size() * 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = s.amplitudes[i] * kInvSqrt2;
        out.amplitudes[2 * i] = v;
        out.amplitudes[2 * i + 1] = v;
    }
    ensure_normalized(out, "tensor_with_plus_ancilla");
    return out;
}

StateVector cyclic_shift(const StateVector &s) {
    const std::size_t n = s.size();
    StateVector out;
    out.qubit_count = s.qubit_count;
    out.amplitudes.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.amplitudes[j] = s.amplitudes[(j + 1) % n];
    }
    ensure_normalized(out, "cyclic_shift");
    return out;
}

StateVector x_on_ancilla(const StateVector &s) {
    StateVector out;
    out.qubit_count = s.qubit_count;
    out.amplitudes.resize(s.size());
    for (std::size_t k = 0; k + 1 < s.size(); k += 2) {
        out.amplitudes[k] = s.amplitudes[k + 1];
        out.amplitudes[k + 1] = s.amplitudes[k];
    }
    ensure_normalized(out, "x_on_ancilla");
    return out;
}

StateVector h_on_ancilla(const StateVector &s) {
    static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
    StateVector out;
    out.qubit_count = s.qubit_count;
    out.amplitudes.resize(s.size());
    for (std::size_t k = 0; k + 1 < s.size(); k += 2) {
        const double a = s.amplitudes[k];
        const double b = s.amplitudes[k + 1];
        out.amplitudes[k] = (a + b) * kInvSqrt2;
        out.amplitudes[k + 1] = (a - b) * kInvSqrt2;
    }
    ensure_normalized(out, "h_on_ancilla");
    return out;
}

namespace {

// Fixed 53-bit mantissa recipe so sampled sequences are identical on every
// platform. std::uniform_real_distribution is not pinned by the standard.
double next_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

CountsMap sample_measurements(const StateVector &s, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ConfigError("sample_measurements: shots must be >= 1");
    }
    // Inverse-CDF sampling over the cumulative probabilities.
    std::vector<double> cdf(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s.amplitudes[i] * s.amplitudes[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    CountsMap result;
    result.shots = shots;
    for (std::uint64_t n = 0; n < shots; ++n) {
        const double u = next_uniform(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
        ++result.counts[idx];
    }
    return result;
}

PostSelection post_select_ancilla(const StateVector &s, int outcome) {
    if (s.qubit_count < 2) {
        throw ConfigError("post_select_ancilla: need at least 2 qubits");
    }
    if (outcome != 0 && outcome != 1) {
        throw ConfigError("post_select_ancilla: outcome must be 0 or 1");
    }
    PostSelection ps;
    ps.projected.resize(s.size() / 2);
    double prob = 0.0;
    for (std::size_t k = 0; k < ps.projected.size(); ++k) {
        const double a = s.amplitudes[2 * k + static_cast<std::size_t>(outcome)];
        ps.projected[k] = a;
        prob += a * a;
    }
    ps.probability = prob;
    return ps;
}

GateSequence build_shift_circuit(int qubit_count) {
    if (qubit_count < 1) {
        throw ConfigError("build_shift_circuit: qubit_count must be >= 1");
    }
    // Decrement cascade |k> -> |k-1 mod 2^q>: X on the least-significant
    // qubit, then for each higher qubit an X controlled on all lower qubits
    // being 1 (post-flip). One stage per qubit.
    GateSequence seq;
    seq.qubit_count = qubit_count;
    seq.gates.push_back(GateDescriptor{GateKind::PauliX, 0, {}, {}});
    for (int t = 1; t < qubit_count; ++t) {
        GateDescriptor g;
        g.kind = GateKind::MultiControlledX;
        g.target = t;
        for (int c = 0; c < t; ++c) {
            g.controls.push_back(c);
            g.control_values.push_back(true);
        }
        seq.gates.push_back(std::move(g));
    }
    return seq;
}

StateVector apply_gate_sequence(const GateSequence &seq, const StateVector &s) {
    if (seq.qubit_count != s.qubit_count) {
        throw ConfigError("apply_gate_sequence: sequence width does not match state");
    }
    StateVector out = s;
    const std::size_t n = out.size();
    for (const GateDescriptor &g : seq.gates) {
        if (g.target < 0 || g.target >= seq.qubit_count) {
            throw ConfigError("apply_gate_sequence: target qubit out of range");
        }
        std::uint64_t ctrl_mask = 0;
        std::uint64_t ctrl_want = 0;
        for (std::size_t c = 0; c < g.controls.size(); ++c) {
            if (g.controls[c] < 0 || g.controls[c] >= seq.qubit_count || g.controls[c] == g.target) {
                throw ConfigError("apply_gate_sequence: bad control qubit");
            }
            const std::uint64_t bit = std::uint64_t{1} << g.controls[c];
            ctrl_mask |= bit;
            if (g.control_values[c]) {
                ctrl_want |= bit;
            }
        }
        const std::uint64_t tbit = std::uint64_t{1} << g.target;
        for (std::uint64_t i = 0; i < n; ++i) {
            if ((i & tbit) != 0) {
                continue; // visit each pair once, from its target-0 side
            }
            if ((i & ctrl_mask) != ctrl_want) {
                continue;
            }
            std::swap(out.amplitudes[i], out.amplitudes[i | tbit]);
        }
    }
    ensure_normalized(out, "apply_gate_sequence");
    return out;
}

} // namespace qgrad
