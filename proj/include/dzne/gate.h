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

#ifndef DZNE_GATE_H
#define DZNE_GATE_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dzne {

/// Gate kinds. Everything except `Opaque` belongs to the native gate set.
///
/// `Opaque` exists so that circuits which were not compiled to the native set
/// can still be represented (and parsed), and then rejected by
/// validate_native() before any folding or simulation touches them.
enum class GateKind : uint8_t { X, U3, Phase, CZ, CNOT, Opaque };

/// A single gate application.
///
/// Angle conventions (radians):
///   U3(theta, phi, lam) = [[cos(theta/2),          -e^{i lam} sin(theta/2)],
///                          [e^{i phi} sin(theta/2), e^{i(phi+lam)} cos(theta/2)]]
///   Phase(phi)          = diag(1, e^{i phi})
///
/// For two-qubit gates the first listed qubit is the least significant bit of
/// the local 4x4 matrix index, and is the control of CNOT.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<uint32_t> qubits;
    std::vector<double> params;
    /// Marks the random Pauli frames inserted by twirling; simulated noiselessly.
    bool is_twirl_frame = false;
    /// Name of an opaque (non-native) gate. Empty for native kinds.
    std::string name;

    static Gate x(uint32_t q);
    static Gate u3(uint32_t q, double theta, double phi, double lam);
    static Gate phase(uint32_t q, double phi);
    static Gate cz(uint32_t a, uint32_t b);
    static Gate cnot(uint32_t control, uint32_t target);
    static Gate opaque(std::string name, std::vector<uint32_t> qubits, std::vector<double> params = {});

    size_t arity() const {
        return qubits.size();
    }
    bool is_native() const {
        return kind != GateKind::Opaque;
    }
    bool is_two_qubit() const {
        return qubits.size() == 2;
    }
    /// Kind name as written in circuit text (`X`, `U3`, `P`, `CZ`, `CNOT`, or the opaque name).
    std::string kind_name() const;
    std::string str() const;

    bool operator==(const Gate &other) const = default;
};

/// Parses a native kind name (`X`, `U3`, `P`, `CZ`, `CNOT`). Returns Opaque for anything else.
GateKind gate_kind_from_name(std::string_view name);

/// Exact unitary of a native gate (2x2 or 4x4). Throws std::invalid_argument for opaque gates.
Eigen::MatrixXcd gate_unitary(const Gate &gate);

/// Inverse of a native gate, expressed again as a native gate.
Gate inverse(const Gate &gate);

}  // namespace dzne

#endif  // DZNE_GATE_H
