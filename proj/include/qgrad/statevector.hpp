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

#ifndef QGRAD_STATEVECTOR_HPP
#define QGRAD_STATEVECTOR_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qgrad {

/// Real-amplitude state over `qubit_count` qubits. All circuits in this
/// toolkit (H, X, amplitude permutations) map real vectors to real vectors,
/// so no complex storage is kept. Immutable by convention: every operation
/// returns a fresh state.
///
/// Bit convention: qubit 0 is the least-significant index bit. The ancilla
/// introduced by tensor_with_plus_ancilla lives there, so a product state
/// interleaves as [c0, c0, c1, c1, ...].
struct StateVector {
    int qubit_count = 0;
    std::vector<double> amplitudes;

    std::size_t size() const { return amplitudes.size(); }
    double norm() const;
};

/// L2-normalizes `values` into a state. Length must be a power of two >= 2
/// and the vector must not be identically zero.
StateVector from_amplitudes(std::span<const double> values);

/// |s> ⊗ |+> with the ancilla on the least-significant bit:
/// out[2i + a] = s[i] / sqrt(2) for a in {0, 1}.
StateVector tensor_with_plus_ancilla(const StateVector &s);

/// Amplitude shift: out[j] = in[(j + 1) mod 2^q]. Equivalently the basis map
/// |k> -> |k - 1 mod 2^q| (ones on the superdiagonal plus bottom-left corner).
StateVector cyclic_shift(const StateVector &s);

/// Pauli-X on the ancilla (qubit 0): swaps amplitudes 2k <-> 2k+1.
StateVector x_on_ancilla(const StateVector &s);

/// Hadamard on the ancilla (qubit 0): (a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2)
/// on every consecutive pair.
StateVector h_on_ancilla(const StateVector &s);

/// Measurement record: basis index -> observed count, plus the shot total.
struct CountsMap {
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
};

/// Multinomial sampling of the computational basis with probabilities
/// amplitude^2. Deterministic for a fixed seed on any platform (mt19937_64
/// with a fixed 53-bit uniform-double recipe; no std::distributions).
CountsMap sample_measurements(const StateVector &s, std::uint64_t shots, std::uint64_t seed);

/// Unnormalized branch kept by an ancilla measurement; probability is the
/// squared norm of `projected`. The two outcomes' probabilities sum to 1.
struct PostSelection {
    std::vector<double> projected;
    double probability = 0.0;
};

/// Projects onto ancilla == outcome (qubit 0): projected[k] = in[2k + outcome].
/// Returned unnormalized so downstream rescaling can keep circuit prefactors.
PostSelection post_select_ancilla(const StateVector &s, int outcome);

enum class GateKind { PauliX, MultiControlledX };

struct GateDescriptor {
    GateKind kind = GateKind::PauliX;
    int target = 0;
    std::vector<int> controls;           // qubit indices, never the target
    std::vector<bool> control_values;    // required bit per control
};

struct GateSequence {
    int qubit_count = 0;
    std::vector<GateDescriptor> gates;

    int gate_count() const { return static_cast<int>(gates.size()); }
};

/// Decrement-style multi-controlled-X cascade whose composed action equals
/// cyclic_shift on any state. Exactly one cascade stage per qubit, so the
/// gate count is q.
GateSequence build_shift_circuit(int qubit_count);

StateVector apply_gate_sequence(const GateSequence &seq, const StateVector &s);

} // namespace qgrad

#endif
