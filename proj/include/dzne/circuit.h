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

#ifndef DZNE_CIRCUIT_H
#define DZNE_CIRCUIT_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dzne/gate.h"

namespace dzne {

/// Ordered gate list over a fixed number of qubits. Gates execute left to right.
///
/// A Circuit is a value: every mutation goes through append(), which checks
/// qubit ranges, so a constructed circuit always satisfies its invariants.
class Circuit {
   public:
    explicit Circuit(uint32_t n_qubits, std::string label = {});
    Circuit(uint32_t n_qubits, std::vector<Gate> gates, std::string label = {});

    uint32_t num_qubits() const {
        return n_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::string &label() const {
        return label_;
    }
    void set_label(std::string label) {
        label_ = std::move(label);
    }
    size_t size() const {
        return gates_.size();
    }

    /// Throws std::invalid_argument if a qubit index is out of range or repeated.
    void append(Gate gate);
    void append(const Circuit &other);

    size_t count_two_qubit_gates() const;
    /// Number of layers of two-qubit gates when each is scheduled as early as possible.
    size_t two_qubit_depth() const;

    /// Stable 64-bit hash of the gate list (FNV-1a over the text form).
    uint64_t fingerprint() const;

    bool operator==(const Circuit &other) const = default;

   private:
    uint32_t n_qubits_;
    std::vector<Gate> gates_;
    std::string label_;
};

/// Gates reversed and individually inverted.
Circuit dagger(const Circuit &circuit);

/// Disordered spin-chain evolution in the native gate set.
///
/// Initial X on every odd qubit, then per step: CZ on (0,1),(2,3),... each
/// followed by U3(theta1,theta2,theta3) on both qubits; CZ on (1,2),(3,4),...
/// each followed by U3 on both qubits; then P(phi_i) on every qubit. The
/// disorder angles phi_i ~ U[-pi, pi] are drawn once from `disorder_seed` and
/// reused in every step.
Circuit build_spin_chain(
    uint32_t n, uint32_t steps, double theta1, double theta2, double theta3, uint64_t disorder_seed);

/// Disorder angles used by build_spin_chain for a given seed.
std::vector<double> spin_chain_disorder(uint32_t n, uint64_t disorder_seed);

enum class EntanglerKind { CZ, CNOT };

/// Brickwork of bare entangling gates: even layers on (0,1),(2,3),..., odd
/// layers on (1,2),(3,4),..., filled in order until exactly `total_2q` gates
/// are placed.
Circuit build_brickwork(uint32_t n, uint32_t total_2q, EntanglerKind kind);

struct ValidationReport {
    bool ok = true;
    size_t gate_index = 0;
    std::string message;

    explicit operator bool() const {
        return ok;
    }
};

/// Passes iff every gate is in the native set {X, U3, P, CZ, CNOT} with the right arity.
ValidationReport validate_native(const Circuit &circuit);

/// Line format:
///
///     qubits N
///     label free text          (optional)
///     KIND q0 [q1] [angles...] [frame]
///
/// Angles are written in shortest round-trip form, so to_text/from_text is bit exact.
/// Blank lines and lines starting with '#' are ignored on input.
std::string to_text(const Circuit &circuit);
Circuit circuit_from_text(std::string_view text);

}  // namespace dzne

#endif  // DZNE_CIRCUIT_H
