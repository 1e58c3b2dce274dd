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

#include "dzne/circuit.h"

#include <algorithm>
#include <charconv>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dzne/rng.h"
#include "dzne/text_util.h"

namespace dzne {

Circuit::Circuit(uint32_t n_qubits, std::string label) : n_qubits_(n_qubits), label_(std::move(label)) {
    if (n_qubits == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

Circuit::Circuit(uint32_t n_qubits, std::vector<Gate> gates, std::string label)
    : Circuit(n_qubits, std::move(label)) {
    gates_.reserve(gates.size());
    for (auto &g : gates) {
        append(std::move(g));
    }
}

void Circuit::append(Gate gate) {
    if (gate.qubits.empty()) {
        throw std::invalid_argument("gate " + gate.str() + " acts on no qubits");
    }
    for (size_t a = 0; a < gate.qubits.size(); a++) {
        if (gate.qubits[a] >= n_qubits_) {
            throw std::invalid_argument(
                "gate " + gate.str() + " addresses qubit " + std::to_string(gate.qubits[a]) + " in a " +
                std::to_string(n_qubits_) + "-qubit circuit");
        }
        for (size_t b = 0; b < a; b++) {
            if (gate.qubits[a] == gate.qubits[b]) {
                throw std::invalid_argument("gate " + gate.str() + " repeats a qubit");
            }
        }
    }
    gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw std::invalid_argument("cannot append circuits with different qubit counts");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

size_t Circuit::count_two_qubit_gates() const {
    return std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) { return g.is_two_qubit(); });
}

size_t Circuit::two_qubit_depth() const {
    std::vector<size_t> level(n_qubits_, 0);
    size_t depth = 0;
    for (const auto &g : gates_) {
        if (g.arity() < 2) {
            continue;
        }
        size_t l = 0;
        for (uint32_t q : g.qubits) {
            l = std::max(l, level[q]);
        }
        l++;
        for (uint32_t q : g.qubits) {
            level[q] = l;
        }
        depth = std::max(depth, l);
    }
    return depth;
}

uint64_t Circuit::fingerprint() const {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : to_text(*this)) {
        h = (h ^ c) * 0x100000001B3ULL;
    }
    return h;
}

Circuit dagger(const Circuit &circuit) {
    Circuit out(circuit.num_qubits(), circuit.label());
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.append(inverse(*it));
    }
    return out;
}

std::vector<double> spin_chain_disorder(uint32_t n, uint64_t disorder_seed) {
    Rng rng(disorder_seed);
    std::vector<double> phis(n);
    for (auto &phi : phis) {
        phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return phis;
}

Circuit build_spin_chain(
    uint32_t n, uint32_t steps, double theta1, double theta2, double theta3, uint64_t disorder_seed) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("spin chain needs an even number of qubits >= 2, got " + std::to_string(n));
    }
    Circuit c(n, "spin_chain");
    for (uint32_t q = 1; q < n; q += 2) {
        c.append(Gate::x(q));
    }
    auto phis = spin_chain_disorder(n, disorder_seed);
    for (uint32_t s = 0; s < steps; s++) {
        for (uint32_t start : {0u, 1u}) {
            for (uint32_t q = start; q + 1 < n; q += 2) {
                c.append(Gate::cz(q, q + 1));
                c.append(Gate::u3(q, theta1, theta2, theta3));
                c.append(Gate::u3(q + 1, theta1, theta2, theta3));
            }
        }
        for (uint32_t q = 0; q < n; q++) {
            c.append(Gate::phase(q, phis[q]));
        }
    }
    return c;
}

Circuit build_brickwork(uint32_t n, uint32_t total_2q, EntanglerKind kind) {
    if (n < 2) {
        throw std::invalid_argument("brickwork needs at least 2 qubits");
    }
    Circuit c(n, "brickwork");
    uint32_t placed = 0;
    for (uint32_t layer = 0; placed < total_2q; layer++) {
        for (uint32_t q = layer % 2; q + 1 < n && placed < total_2q; q += 2) {
            c.append(kind == EntanglerKind::CZ ? Gate::cz(q, q + 1) : Gate::cnot(q, q + 1));
            placed++;
        }
    }
    return c;
}

ValidationReport validate_native(const Circuit &circuit) {
    const auto &gates = circuit.gates();
    for (size_t k = 0; k < gates.size(); k++) {
        const Gate &g = gates[k];
        std::string problem;
        if (!g.is_native()) {
            problem = "non-native gate";
        } else {
            bool two = g.kind == GateKind::CZ || g.kind == GateKind::CNOT;
            size_t want_params = g.kind == GateKind::U3 ? 3 : g.kind == GateKind::Phase ? 1 : 0;
            if (g.arity() != (two ? 2u : 1u)) {
                problem = "wrong qubit count";
            } else if (g.params.size() != want_params) {
                problem = "wrong parameter count";
            }
        }
        if (!problem.empty()) {
            return {false, k, problem + " '" + g.str() + "' at position " + std::to_string(k)};
        }
    }
    return {};
}

std::string to_text(const Circuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    if (!circuit.label().empty()) {
        out += "label " + circuit.label() + "\n";
    }
    for (const auto &g : circuit.gates()) {
        out += g.kind_name();
        for (uint32_t q : g.qubits) {
            out += ' ';
            out += std::to_string(q);
        }
        if (!g.params.empty() && !g.is_native()) {
            out += " |";
        }
        for (double p : g.params) {
            out += ' ';
            out += format_double(p);
        }
        if (g.is_twirl_frame) {
            out += " frame";
        }
        out += '\n';
    }
    return out;
}

namespace {

uint32_t parse_qubit(std::string_view tok, size_t line_no) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad qubit index '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

Circuit circuit_from_text(std::string_view text) {
    std::optional<Circuit> circuit;
    size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
        line_no++;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto toks = split_whitespace(line);
        if (!circuit) {
            if (toks.size() != 2 || toks[0] != "qubits") {
                throw std::invalid_argument("circuit text must start with 'qubits N'");
            }
            circuit.emplace(parse_qubit(toks[1], line_no));
            continue;
        }
        if (toks[0] == "label") {
            circuit->set_label(std::string(trim(line.substr(5))));
            continue;
        }
        Gate g;
        g.kind = gate_kind_from_name(toks[0]);
        if (!toks.empty() && toks.back() == "frame") {
            g.is_twirl_frame = true;
            toks.pop_back();
        }
        size_t k = 1;
        if (g.is_native()) {
            size_t arity = (g.kind == GateKind::CZ || g.kind == GateKind::CNOT) ? 2 : 1;
            size_t n_params = g.kind == GateKind::U3 ? 3 : g.kind == GateKind::Phase ? 1 : 0;
            if (toks.size() != 1 + arity + n_params) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": wrong token count for " +
                                            std::string(toks[0]));
            }
            for (; k < 1 + arity; k++) {
                g.qubits.push_back(parse_qubit(toks[k], line_no));
            }
        } else {
            g.name = std::string(toks[0]);
            for (; k < toks.size() && toks[k] != "|"; k++) {
                g.qubits.push_back(parse_qubit(toks[k], line_no));
            }
            if (k < toks.size()) {
                k++;
            }
        }
        for (; k < toks.size(); k++) {
            g.params.push_back(parse_double(toks[k]));
        }
        circuit->append(std::move(g));
    }
    if (!circuit) {
        throw std::invalid_argument("empty circuit text");
    }
    return std::move(*circuit);
}

}  // namespace dzne
