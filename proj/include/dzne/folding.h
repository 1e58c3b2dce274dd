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

#ifndef DZNE_FOLDING_H
#define DZNE_FOLDING_H

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dzne/circuit.h"

namespace dzne {

enum class FoldScope { Local, Global };
enum class Foldable { TwoQubitOnly, AllGates };

/// Which gates get folded how often to reach a target noise factor.
///
/// With d foldable gates, s_total = round(d (lambda - 1) / 2) G^dagger G pairs
/// are inserted. Every foldable gate receives k = s_total / d folds and
/// m = s_total % d of them one more, so the realized noise factor is
/// lambda_eff = 1 + 2 s_total / d.
struct FoldingPlan {
    double target_lambda = 1;
    FoldScope scope = FoldScope::Local;
    Foldable foldable = Foldable::TwoQubitOnly;
    uint64_t s_total = 0;
    /// Fold count per foldable gate, indexed by foldable-gate ordinal.
    std::vector<uint32_t> per_gate_folds;
    double lambda_eff = 1;
    uint64_t seed = 0;
    /// Identity of the circuit the plan was made for.
    size_t circuit_gate_count = 0;
    uint64_t circuit_fingerprint = 0;

    size_t num_foldable() const {
        return per_gate_folds.size();
    }
    bool operator==(const FoldingPlan &) const = default;
};

bool is_foldable(const Gate &gate, Foldable foldable);
size_t count_foldable(const Circuit &circuit, Foldable foldable);

/// Plans a fold to noise factor `lambda`.
///
/// Local scope assigns the m extra folds to a uniformly random m-subset of the
/// foldable gates drawn from `seed`; global scope assigns them to the last m.
/// Throws std::invalid_argument for lambda < 1, or lambda > 1 with no foldable gates.
FoldingPlan plan_fold(const Circuit &circuit, double lambda, FoldScope scope, Foldable foldable, uint64_t seed);

/// Executes a plan.
///
/// Local: each foldable gate G with count c becomes G (G^dagger G)^c in place.
/// Global: C (C^dagger C)^k, then the suffix starting at the first of the last
/// m foldable gates is appended as suffix^dagger suffix.
/// Throws std::invalid_argument if the plan was built for a different circuit.
Circuit apply_fold(const Circuit &circuit, const FoldingPlan &plan);

struct FoldedCircuit {
    Circuit circuit;
    FoldingPlan plan;
    /// Number of ensemble samples this circuit stands for.
    size_t multiplicity = 1;
};

/// `num_samples` independent plans, sample i seeded with derive_seed(base_seed, {i}).
///
/// When the plan has no random part (m = 0) every sample is identical, and the
/// result holds one circuit with multiplicity num_samples.
std::vector<FoldedCircuit> sample_fold_ensemble(
    const Circuit &circuit, double lambda, size_t num_samples, FoldScope scope, Foldable foldable, uint64_t base_seed);

std::string to_string(FoldScope scope);
std::string to_string(Foldable foldable);

nlohmann::json to_json(const FoldingPlan &plan);
FoldingPlan folding_plan_from_json(const nlohmann::json &j);

}  // namespace dzne

#endif  // DZNE_FOLDING_H
