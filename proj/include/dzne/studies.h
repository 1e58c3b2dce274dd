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

#ifndef DZNE_STUDIES_H
#define DZNE_STUDIES_H

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "dzne/circuit.h"
#include "dzne/extrapolate.h"

namespace dzne {

/// `count` values from lo to hi, evenly spaced in log.
std::vector<double> log_spaced(double lo, double hi, size_t count);

inline constexpr double kDefaultTheta1 = 0.05 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Extrapolator calibration sweep.

struct CalibrationConfig {
    uint32_t n = 6;
    /// Two-qubit depths; each must be even (two per spin-chain step).
    std::vector<uint32_t> depths;
    std::vector<double> error_probs;
    std::vector<double> noise_factors{1, 3, 5};
    /// Shots per noise factor; 0 runs exact simulation.
    uint64_t shots = 8000;
    size_t repetitions = 5;
    size_t fold_samples = 1;
    double theta1 = kDefaultTheta1;
    double preference_threshold = 0.001;
    double nf_threshold = 0.4;
    uint64_t seed = 0;

    /// Depths 0,2,...,40 and 8 log-spaced error probabilities in [0.001, 0.04].
    static CalibrationConfig defaults();
};

struct CalibrationCell {
    uint32_t depth = 0;
    double error_prob = 0;
    double rmse_L = 0;
    double rmse_Q = 0;
    double rmse_E = 0;
    /// Smallest RMSE over the three models.
    double best_abs_error = 0;
    ModelChoice label = ModelChoice::L;
};

/// For every (depth, error) cell: `repetitions` spin chains with fresh
/// disorder, ideal <Z...Z> from noiseless simulation, one mitigated run fitted
/// with L (linear), Q (quadratic) and E (exponential), per-model RMSE over the
/// repetitions, and the label from select_model. Disorder depends only on the
/// cell coordinates and repetition, so sweeps that differ only in noise
/// factors see the same circuits.
std::vector<CalibrationCell> run_calibration_sweep(const CalibrationConfig &config);
void write_calibration_csv(std::ostream &out, const std::vector<CalibrationCell> &cells);

// ---------------------------------------------------------------------------
// Partial-folding sample-count study.

struct PartialFoldConfig {
    uint32_t n = 6;
    std::vector<uint32_t> total_2q{15, 30};
    EntanglerKind kind = EntanglerKind::CZ;
    double p_min = 0.01;
    double p_max = 0.10;
    std::vector<double> noise_factors{1, 1.1};
    std::vector<size_t> sample_counts{1, 2, 5, 10};
    size_t repetitions = 100;
    uint64_t shots = 8000;
    uint64_t seed = 0;
};

struct PartialFoldRow {
    uint32_t total_2q = 0;
    size_t num_samples = 0;
    double mean = 0;
    /// Ensemble standard deviation of the zero-noise value over repetitions.
    double std_dev = 0;
    std::vector<double> values;
};

/// Brickwork circuits with per-pair depolarizing drawn from U[p_min, p_max]
/// once per (seed, total_2q); each repetition redraws fold subsets and shots.
std::vector<PartialFoldRow> run_partial_fold_study(const PartialFoldConfig &config);
void write_partial_fold_csv(std::ostream &out, const std::vector<PartialFoldRow> &rows);

// ---------------------------------------------------------------------------
// Shot-noise scaling study.

struct ShotScalingConfig {
    uint32_t n = 6;
    uint32_t steps = 5;
    std::vector<double> error_probs{0.001, 0.01, 0.02};
    /// Shots per noise factor; 0 runs exact simulation.
    std::vector<uint64_t> shots{1000, 10000, 100000};
    size_t repetitions = 50;
    std::vector<double> noise_factors{1, 3, 5};
    double theta1 = kDefaultTheta1;
    uint64_t seed = 0;
};

struct ShotScalingRow {
    double error_prob = 0;
    uint64_t shots = 0;
    double mean = 0;
    double sigma = 0;
};

/// sigma = a N^-exponent fitted by least squares in log-log coordinates.
struct ShotScalingFit {
    double error_prob = 0;
    double a = 0;
    double exponent = 0;
};

struct ShotScalingResult {
    std::vector<ShotScalingRow> rows;
    std::vector<ShotScalingFit> fits;
};

ShotScalingResult run_shot_scaling_study(const ShotScalingConfig &config);
void write_shot_scaling_csv(std::ostream &out, const ShotScalingResult &result);

// ---------------------------------------------------------------------------
// Readout-mitigation study.

struct ReadoutStudyConfig {
    uint32_t n = 6;
    std::vector<uint32_t> steps{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double depol = 0.01;
    double p01 = 0.02;
    double p10 = 0.01;
    uint64_t shots = 8000;
    std::vector<double> noise_factors{1, 3, 5};
    size_t repetitions = 5;
    double theta1 = kDefaultTheta1;
    uint64_t seed = 0;
};

struct ReadoutStudyRow {
    uint32_t steps = 0;
    /// Mean over repetitions of |value - ideal|.
    double err_unmitigated = 0;
    double err_zne = 0;
    double err_zne_ro = 0;

    double gap() const {
        return err_zne - err_zne_ro;
    }
};

std::vector<ReadoutStudyRow> run_readout_study(const ReadoutStudyConfig &config);
void write_readout_csv(std::ostream &out, const std::vector<ReadoutStudyRow> &rows);

// ---------------------------------------------------------------------------
// Twirling study.

struct TwirlStudyConfig {
    uint32_t n = 6;
    std::vector<uint32_t> steps{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double depol = 0.01;
    double epsilon = 0.15;
    std::vector<size_t> twirl_counts{0, 10, 50};
    uint64_t shots = 8000;
    std::vector<double> noise_factors{1, 3, 5};
    size_t repetitions = 3;
    double theta1 = kDefaultTheta1;
    uint64_t seed = 0;
};

struct TwirlStudyRow {
    size_t num_twirls = 0;
    /// 0 marks the row aggregated over all depths.
    uint32_t steps = 0;
    double rmse = 0;
};

/// Linear dZNE of <Z...Z> with and without twirling; RMSE against the ideal
/// over repetitions per depth, plus one overall row per twirl count.
std::vector<TwirlStudyRow> run_twirl_study(const TwirlStudyConfig &config);
void write_twirl_csv(std::ostream &out, const std::vector<TwirlStudyRow> &rows);

// ---------------------------------------------------------------------------
// Composite-strategy benchmark on a conserved-charge chain.

struct BenchmarkConfig {
    uint32_t n = 10;
    std::vector<uint32_t> steps;
    double depol = 0.01;
    double epsilon = 0.15;
    double p01 = 0.02;
    double p10 = 0.01;
    uint64_t shots = 16384;
    size_t num_twirls = 16;
    std::vector<std::vector<double>> noise_factor_sets{{1, 3, 5}, {1, 1.1, 1.2}};
    size_t fold_samples = 1;
    uint64_t seed = 0;

    /// Steps 1..35.
    static BenchmarkConfig defaults();
};

struct BenchmarkRow {
    uint32_t depth_2q = 0;
    /// Noise factors joined with '|', or "none" for the unmitigated strategy.
    std::string noise_set;
    /// no-mit, RO+RC, RO+RC+L, RO+RC+Q or RO+RC+E.
    std::string strategy;
    /// Root mean square over qubits of <Z_i> - ideal.
    double eps_avg = 0;
    double eps_avg_stderr = 0;
};

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig &config);
void write_benchmark_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows);
std::string noise_set_label(const std::vector<double> &factors);

}  // namespace dzne

#endif  // DZNE_STUDIES_H
