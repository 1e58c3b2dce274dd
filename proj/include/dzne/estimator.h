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

#ifndef DZNE_ESTIMATOR_H
#define DZNE_ESTIMATOR_H

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dzne/circuit.h"
#include "dzne/extrapolate.h"
#include "dzne/folding.h"
#include "dzne/noise_model.h"
#include "dzne/pauli.h"

namespace dzne {

/// One mitigated estimation request.
struct EstimatorJob {
    Circuit circuit{1};
    std::vector<PauliString> observables;
    /// Strictly increasing, all >= 1.
    std::vector<double> noise_factors{1, 3, 5};
    size_t fold_samples = 1;
    /// 0 disables twirling.
    size_t num_twirls = 0;
    bool readout_mitigation = false;
    /// Shots per noise factor and observable, split over fold samples and
    /// twirls. 0 selects exact simulation (no sampling, zero standard errors).
    uint64_t total_shots_per_factor = 8000;
    /// Shots per calibration circuit for readout mitigation; 0 uses total_shots_per_factor.
    uint64_t readout_calibration_shots = 0;
    std::vector<ExtrapolationModel> models{ExtrapolationModel::linear()};
    FoldScope scope = FoldScope::Local;
    Foldable foldable = Foldable::TwoQubitOnly;
    uint64_t seed = 0;
    /// Record FitError as ExtrapolationFit::error with NaN values instead of throwing.
    bool tolerate_fit_errors = false;

    size_t variants_per_factor() const {
        return fold_samples * std::max<size_t>(num_twirls, 1);
    }
    bool exact() const {
        return total_shots_per_factor == 0;
    }
    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// One circuit execution in the interleaved schedule.
struct ExecutionVariant {
    size_t index = 0;
    size_t fold_sample = 0;
    size_t twirl = 0;
    size_t observable = 0;
    size_t factor_index = 0;
    double lambda = 1;
    uint64_t shots = 0;
    uint64_t seed = 0;
};

/// Execution order: groups of (fold sample, twirl); inside each group every
/// observable runs its whole noise-factor sweep back to back in ascending lambda.
/// Variant i samples with derive_seed(job.seed, {kSampleTag, i}).
std::vector<ExecutionVariant> build_execution_plan(const EstimatorJob &job);

/// floor(total / v) shots for each of v = fold_samples * max(num_twirls, 1)
/// variants, the remainder going one each to the first variants.
/// Throws std::invalid_argument if total < v.
std::vector<uint64_t> allocate_shots(uint64_t total_per_factor, size_t fold_samples, size_t num_twirls);

struct ObservableResult {
    PauliString observable;
    /// One per noise factor, in job order, at the realized lambda_eff.
    std::vector<NoisePoint> points;
    std::vector<ExtrapolationFit> fits;
    /// First requested model whose fit succeeded and carries neither
    /// out_of_range nor degenerate_fit; otherwise the first successful fit.
    /// NaN when no fit succeeded.
    double chosen_value = 0;
    double chosen_std_error = 0;
    std::string chosen_model;
};

struct MitigatedResult {
    std::vector<ObservableResult> observables;
    /// Seeds, fold plans, shot allocation and per-variant estimates.
    nlohmann::json provenance;
};

/// Runs fold -> twirl -> execute -> (readout correction) -> estimate ->
/// average -> extrapolate. Fit failures propagate as FitError unless the job
/// tolerates them.
MitigatedResult run_mitigated_estimator(const EstimatorJob &job, const NoiseModel &noise);

/// Seed path tags.
inline constexpr uint64_t kFoldTag = 1;
inline constexpr uint64_t kTwirlTag = 2;
inline constexpr uint64_t kSampleTag = 3;
inline constexpr uint64_t kReadoutTag = 4;

}  // namespace dzne

#endif  // DZNE_ESTIMATOR_H
