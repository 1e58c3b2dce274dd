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

#include "dzne/twirl.h"

#include <array>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "dzne/rng.h"

namespace dzne {

namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

uint32_t letter_index(char c) {
    switch (c) {
        case 'I':
            return 0;
        case 'X':
            return 1;
        case 'Y':
            return 2;
        case 'Z':
            return 3;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

Eigen::Matrix2cd single_pauli(char c) {
    using cd = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (letter_index(c)) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

struct ConjugationTable {
    // [gate][pauli index] for gate 0 = CZ, 1 = CNOT.
    std::array<std::array<TwoQubitPauli, 16>, 2> entries;
};

const ConjugationTable &table() {
    static const ConjugationTable t = [] {
        ConjugationTable out;
        const Gate gates[2] = {Gate::cz(0, 1), Gate::cnot(0, 1)};
        for (int g = 0; g < 2; g++) {
            Eigen::Matrix4cd u = gate_unitary(gates[g]);
            for (uint32_t k = 0; k < 16; k++) {
                Eigen::Matrix4cd target = u * pauli_unitary(TwoQubitPauli::from_index(k)) * u.adjoint();
                bool found = false;
                for (uint32_t j = 0; j < 16 && !found; j++) {
                    for (int sign : {1, -1}) {
                        auto q = TwoQubitPauli::from_index(j, sign);
                        if ((pauli_unitary(q) - target).cwiseAbs().maxCoeff() < 1e-12) {
                            out.entries[g][k] = q;
                            found = true;
                            break;
                        }
                    }
                }
                if (!found) {
                    throw std::logic_error("gate does not map Paulis to signed Paulis");
                }
            }
        }
        return out;
    }();
    return t;
}

}  // namespace

uint32_t TwoQubitPauli::index() const {
    return letter_index(left) + 4 * letter_index(right);
}

TwoQubitPauli TwoQubitPauli::from_index(uint32_t index, int sign) {
    if (index >= 16) {
        throw std::out_of_range("two-qubit Pauli index out of range");
    }
    return {kLetters[index % 4], kLetters[index / 4], sign};
}

std::string TwoQubitPauli::str() const {
    return std::string(sign < 0 ? "-" : "+") + left + right;
}

Eigen::Matrix4cd pauli_unitary(const TwoQubitPauli &p) {
    // Kronecker product with the right letter on the high bit.
    Eigen::Matrix2cd a = single_pauli(p.right);
    Eigen::Matrix2cd b = single_pauli(p.left);
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            m(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);
        }
    }
    return static_cast<double>(p.sign) * m;
}

TwoQubitPauli conjugate_pauli(GateKind kind, const TwoQubitPauli &p) {
    int g;
    if (kind == GateKind::CZ) {
        g = 0;
    } else if (kind == GateKind::CNOT) {
        g = 1;
    } else {
        throw std::invalid_argument("Pauli conjugation is only tabulated for CZ and CNOT");
    }
    TwoQubitPauli q = table().entries[g][p.index()];
    q.sign *= p.sign;
    return q;
}

Gate pauli_frame_gate(char letter, uint32_t qubit) {
    Gate g;
    switch (letter_index(letter)) {
        case 0:
            g = Gate::u3(qubit, 0, 0, 0);
            break;
        case 1:
            g = Gate::x(qubit);
            break;
        case 2:
            g = Gate::u3(qubit, std::numbers::pi, std::numbers::pi / 2, std::numbers::pi / 2);
            break;
        default:
            g = Gate::phase(qubit, std::numbers::pi);
            break;
    }
    g.is_twirl_frame = true;
    return g;
}

Circuit twirl_circuit(const Circuit &circuit, uint64_t seed) {
    Rng rng(seed);
    Circuit out(circuit.num_qubits(), circuit.label());
    for (const Gate &g : circuit.gates()) {
        if (!g.is_two_qubit()) {
            out.append(g);
            continue;
        }
        if (g.kind != GateKind::CZ && g.kind != GateKind::CNOT) {
            throw std::invalid_argument("cannot twirl two-qubit gate " + g.str());
        }
        auto p = TwoQubitPauli::from_index(static_cast<uint32_t>(rng.below(16)));
        auto q = conjugate_pauli(g.kind, p);
        out.append(pauli_frame_gate(p.left, g.qubits[0]));
        out.append(pauli_frame_gate(p.right, g.qubits[1]));
        out.append(g);
        out.append(pauli_frame_gate(q.left, g.qubits[0]));
        out.append(pauli_frame_gate(q.right, g.qubits[1]));
    }
    return out;
}

std::vector<Circuit> twirl_ensemble(const Circuit &circuit, size_t num_twirls, uint64_t base_seed) {
    if (num_twirls == 0) {
        throw std::invalid_argument("twirl ensembles need at least one twirl");
    }
    std::vector<Circuit> out;
    out.reserve(num_twirls);
    for (size_t i = 0; i < num_twirls; i++) {
        out.push_back(twirl_circuit(circuit, derive_seed(base_seed, {i})));
    }
    return out;
}

}  // namespace dzne
