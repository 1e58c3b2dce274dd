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

#include "dzne/gate.h"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace dzne {

using cplx = std::complex<double>;

Gate Gate::x(uint32_t q) {
    return Gate{GateKind::X, {q}, {}, false, {}};
}

Gate Gate::u3(uint32_t q, double theta, double phi, double lam) {
    return Gate{GateKind::U3, {q}, {theta, phi, lam}, false, {}};
}

Gate Gate::phase(uint32_t q, double phi) {
    return Gate{GateKind::Phase, {q}, {phi}, false, {}};
}

Gate Gate::cz(uint32_t a, uint32_t b) {
    if (a == b) {
        throw std::invalid_argument("CZ needs two distinct qubits");
    }
    return Gate{GateKind::CZ, {a, b}, {}, false, {}};
}

Gate Gate::cnot(uint32_t control, uint32_t target) {
    if (control == target) {
        throw std::invalid_argument("CNOT needs two distinct qubits");
    }
    return Gate{GateKind::CNOT, {control, target}, {}, false, {}};
}

Gate Gate::opaque(std::string name, std::vector<uint32_t> qubits, std::vector<double> params) {
    if (name.empty()) {
        throw std::invalid_argument("opaque gate needs a name");
    }
    return Gate{GateKind::Opaque, std::move(qubits), std::move(params), false, std::move(name)};
}

std::string Gate::kind_name() const {
    switch (kind) {
        case GateKind::X:
            return "X";
        case GateKind::U3:
            return "U3";
        case GateKind::Phase:
            return "P";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::Opaque:
            return name;
    }
    return "?";
}

std::string Gate::str() const {
    std::ostringstream out;
    out << kind_name();
    if (!params.empty()) {
        out << "(";
        for (size_t k = 0; k < params.size(); k++) {
            out << (k ? "," : "") << params[k];
        }
        out << ")";
    }
    for (uint32_t q : qubits) {
        out << " " << q;
    }
    return out.str();
}

GateKind gate_kind_from_name(std::string_view name) {
    if (name == "X") {
        return GateKind::X;
    }
    if (name == "U3") {
        return GateKind::U3;
    }
    if (name == "P") {
        return GateKind::Phase;
    }
    if (name == "CZ") {
        return GateKind::CZ;
    }
    if (name == "CNOT") {
        return GateKind::CNOT;
    }
    return GateKind::Opaque;
}

Eigen::MatrixXcd gate_unitary(const Gate &gate) {
    const cplx i(0, 1);
    switch (gate.kind) {
        case GateKind::X: {
            Eigen::MatrixXcd u(2, 2);
            u << 0, 1, 1, 0;
            return u;
        }
        case GateKind::U3: {
            double theta = gate.params[0], phi = gate.params[1], lam = gate.params[2];
            double c = std::cos(theta / 2), s = std::sin(theta / 2);
            Eigen::MatrixXcd u(2, 2);
            u << c, -std::exp(i * lam) * s, std::exp(i * phi) * s, std::exp(i * (phi + lam)) * c;
            return u;
        }
        case GateKind::Phase: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
            u(1, 1) = std::exp(i * gate.params[0]);
            return u;
        }
        case GateKind::CZ: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
            u(3, 3) = -1;
            return u;
        }
        case GateKind::CNOT: {
            // Local index = b_control + 2 * b_target.
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            u(0, 0) = 1;
            u(3, 1) = 1;
            u(2, 2) = 1;
            u(1, 3) = 1;
            return u;
        }
        case GateKind::Opaque:
            break;
    }
    throw std::invalid_argument("no unitary for non-native gate " + gate.str());
}

Gate inverse(const Gate &gate) {
    Gate out = gate;
    switch (gate.kind) {
        case GateKind::X:
        case GateKind::CZ:
        case GateKind::CNOT:
            return out;
        case GateKind::Phase:
            out.params[0] = -gate.params[0];
            return out;
        case GateKind::U3:
            out.params = {-gate.params[0], -gate.params[2], -gate.params[1]};
            return out;
        case GateKind::Opaque:
            break;
    }
    throw std::invalid_argument("cannot invert non-native gate " + gate.str());
}

}  // namespace dzne
