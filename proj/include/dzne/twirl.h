// Copyright 2026 The dzne Authors
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

#ifndef DZNE_TWIRL_H
#define DZNE_TWIRL_H

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dzne/circuit.h"

namespace dzne {

/// Signed two-qubit Pauli. `left` acts on the gate's first qubit, `right` on its second.
struct TwoQubitPauli {
    char left = 'I';
    char right = 'I';
    int sign = 1;

    /// Index in [0, 16): letter index of left + 4 * letter index of right (I,X,Y,Z order).
    uint32_t index() const;
    static TwoQubitPauli from_index(uint32_t index, int sign = 1);
    std::string str() const;
    bool operator==(const TwoQubitPauli &) const = default;
};

/// 4x4 matrix with the gate's first qubit as the least significant index bit.
Eigen::Matrix4cd pauli_unitary(const TwoQubitPauli &p);

/// The signed Pauli Q with G P = Q G, i.e. Q = G P G^dagger.
///
/// Looked up in a table that is filled on first use by comparing 4x4 matrices
/// against all 32 signed Paulis. Throws std::invalid_argument unless kind is CZ or CNOT.
TwoQubitPauli conjugate_pauli(GateKind kind, const TwoQubitPauli &p);

/// The single-qubit frame gate realizing a Pauli letter (U3(0,0,0) for I).
Gate pauli_frame_gate(char letter, uint32_t qubit);

/// Surrounds every two-qubit gate G with a uniformly random Pauli pair P before
/// and conjugate_pauli(G, P) after, as noiseless frame gates. Each twirled
/// circuit has exactly the original noiseless action (up to global phase).
Circuit twirl_circuit(const Circuit &circuit, uint64_t seed);

/// `num_twirls` twirls, twirl i seeded with derive_seed(base_seed, {i}).
std::vector<Circuit> twirl_ensemble(const Circuit &circuit, size_t num_twirls, uint64_t base_seed);

}  // namespace dzne

#endif  // DZNE_TWIRL_H
