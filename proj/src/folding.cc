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

#include "dzne/folding.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dzne/rng.h"

namespace dzne {

bool is_foldable(const Gate &gate, Foldable foldable) {
    return foldable == Foldable::AllGates || gate.is_two_qubit();
}

size_t count_foldable(const Circuit &circuit, Foldable foldable) {
    size_t d = 0;
    for (const auto &g : circuit.gates()) {
        d += is_foldable(g, foldable);
    }
    return d;
}

FoldingPlan plan_fold(const Circuit &circuit, double lambda, FoldScope scope, Foldable foldable, uint64_t seed) {
    if (!(lambda >= 1)) {
        throw std::invalid_argument("noise factor must be >= 1");
    }
    const size_t d = count_foldable(circuit, foldable);
    FoldingPlan plan;
    plan.target_lambda = lambda;
    plan.scope = scope;
    plan.foldable = foldable;
    plan.seed = seed;
    plan.circuit_gate_count = circuit.size();
    plan.circuit_fingerprint = circuit.fingerprint();
    if (d == 0) {
        if (lambda != 1) {
            throw std::invalid_argument("circuit has no foldable gates; only lambda = 1 is reachable");
        }
        return plan;
    }

    // Round half away from zero; the slack absorbs representation error in
    // lambda (e.g. 1.2 - 1 = 0.19999999999999996).
    const double exact = static_cast<double>(d) * (lambda - 1) / 2;
    plan.s_total = static_cast<uint64_t>(std::floor(exact + 0.5 + 1e-9));
    const uint64_t k = plan.s_total / d;
    const uint64_t m = plan.s_total % d;
    plan.per_gate_folds.assign(d, static_cast<uint32_t>(k));
    if (m > 0) {
        if (scope == FoldScope::Local) {
            std::vector<size_t> order(d);
            std::iota(order.begin(), order.end(), size_t{0});
            Rng rng(seed);
            for (size_t i = 0; i < m; i++) {
                std::swap(order[i], order[i + rng.below(d - i)]);
                plan.per_gate_folds[order[i]]++;
            }
        } else {
            for (size_t i = d - m; i < d; i++) {
                plan.per_gate_folds[i]++;
            }
        }
    }
    plan.lambda_eff = 1 + 2 * static_cast<double>(plan.s_total) / static_cast<double>(d);
    return plan;
}

Circuit apply_fold(const Circuit &circuit, const FoldingPlan &plan) {
    if (plan.circuit_gate_count != circuit.size() || plan.circuit_fingerprint != circuit.fingerprint() ||
        plan.per_gate_folds.size() != count_foldable(circuit, plan.foldable)) {
        throw std::invalid_argument("folding plan was built for a different circuit");
    }
    if (plan.s_total == 0) {
        return circuit;
    }
    Circuit out(circuit.num_qubits(), circuit.label());
    const auto &gates = circuit.gates();

    if (plan.scope == FoldScope::Local) {
        size_t ordinal = 0;
        for (const Gate &g : gates) {
            out.append(g);
            if (!is_foldable(g, plan.foldable)) {
                continue;
            }
            const Gate inv = inverse(g);
            for (uint32_t c = 0; c < plan.per_gate_folds[ordinal]; c++) {
                out.append(inv);
                out.append(g);
            }
            ordinal++;
        }
        return out;
    }

    const size_t d = plan.per_gate_folds.size();
    const uint64_t k = plan.s_total / d;
    const uint64_t m = plan.s_total % d;
    const Circuit inv = dagger(circuit);
    out.append(circuit);
    for (uint64_t r = 0; r < k; r++) {
        out.append(inv);
        out.append(circuit);
    }
    if (m > 0) {
        size_t ordinal = 0;
        size_t start = 0;
        for (size_t pos = 0; pos < gates.size(); pos++) {
            if (is_foldable(gates[pos], plan.foldable)) {
                if (ordinal == d - m) {
                    start = pos;
                    break;
                }
                ordinal++;
            }
        }
        Circuit suffix(circuit.num_qubits(), std::vector<Gate>(gates.begin() + start, gates.end()));
        out.append(dagger(suffix));
        out.append(suffix);
    }
    return out;
}

std::vector<FoldedCircuit> sample_fold_ensemble(
    const Circuit &circuit, double lambda, size_t num_samples, FoldScope scope, Foldable foldable, uint64_t base_seed) {
    if (num_samples == 0) {
        throw std::invalid_argument("fold ensembles need at least one sample");
    }
    std::vector<FoldedCircuit> out;
    FoldingPlan first = plan_fold(circuit, lambda, scope, foldable, derive_seed(base_seed, {0}));
    const size_t d = first.num_foldable();
    const bool deterministic = d == 0 || first.s_total % d == 0 || scope == FoldScope::Global;
    if (deterministic) {
        out.push_back({apply_fold(circuit, first), first, num_samples});
        return out;
    }
    out.push_back({apply_fold(circuit, first), first, 1});
    for (size_t i = 1; i < num_samples; i++) {
        FoldingPlan plan = plan_fold(circuit, lambda, scope, foldable, derive_seed(base_seed, {i}));
        out.push_back({apply_fold(circuit, plan), plan, 1});
    }
    return out;
}

std::string to_string(FoldScope scope) {
    return scope == FoldScope::Local ? "local" : "global";
}

std::string to_string(Foldable foldable) {
    return foldable == Foldable::TwoQubitOnly ? "2q-only" : "all-gates";
}

nlohmann::json to_json(const FoldingPlan &plan) {
    return {
        {"target_lambda", plan.target_lambda},
        {"scope", to_string(plan.scope)},
        {"foldable", to_string(plan.foldable)},
        {"seed", plan.seed},
        {"s_total", plan.s_total},
        {"lambda_eff", plan.lambda_eff},
        {"per_gate_folds", plan.per_gate_folds},
        {"circuit_gate_count", plan.circuit_gate_count},
        {"circuit_fingerprint", plan.circuit_fingerprint},
    };
}

FoldingPlan folding_plan_from_json(const nlohmann::json &j) {
    FoldingPlan plan;
    plan.target_lambda = j.at("target_lambda").get<double>();
    const auto scope = j.at("scope").get<std::string>();
    if (scope != "local" && scope != "global") {
        throw std::invalid_argument("unknown fold scope '" + scope + "'");
    }
    plan.scope = scope == "local" ? FoldScope::Local : FoldScope::Global;
    const auto foldable = j.at("foldable").get<std::string>();
    if (foldable != "2q-only" && foldable != "all-gates") {
        throw std::invalid_argument("unknown foldable set '" + foldable + "'");
    }
    plan.foldable = foldable == "2q-only" ? Foldable::TwoQubitOnly : Foldable::AllGates;
    plan.seed = j.at("seed").get<uint64_t>();
    plan.s_total = j.at("s_total").get<uint64_t>();
    plan.lambda_eff = j.at("lambda_eff").get<double>();
    plan.per_gate_folds = j.at("per_gate_folds").get<std::vector<uint32_t>>();
    plan.circuit_gate_count = j.at("circuit_gate_count").get<size_t>();
    plan.circuit_fingerprint = j.at("circuit_fingerprint").get<uint64_t>();
    uint64_t total = 0;
    for (uint32_t c : plan.per_gate_folds) {
        total += c;
    }
    if (total != plan.s_total) {
        throw std::invalid_argument("per-gate fold counts do not sum to s_total");
    }
    return plan;
}

}  // namespace dzne
