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

#ifndef DZNE_READOUT_H
#define DZNE_READOUT_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dzne/noise_model.h"
#include "dzne/pauli.h"
#include "dzne/sampling.h"

namespace dzne {

/// Tensored readout confusion: qubit i has A_i = [[1-p10, p01], [p10, 1-p01]],
/// A_i[r][t] = P(read r | true t).
class ConfusionModel {
   public:
    ConfusionModel() = default;
    /// Throws std::invalid_argument for probabilities outside [0,1] or p01 + p10 >= 1.
    explicit ConfusionModel(std::vector<ReadoutError> qubits);

    size_t num_qubits() const {
        return qubits_.size();
    }
    const std::vector<ReadoutError> &qubits() const {
        return qubits_;
    }
    const ReadoutError &operator[](size_t q) const {
        return qubits_[q];
    }
    Eigen::Matrix2d matrix(size_t q) const;
    Eigen::Matrix2d inverse_matrix(size_t q) const;
    /// Product of 1/(1 - p01_i - p10_i) over the qubits in `mask`.
    double amplification(uint64_t mask) const;
    bool operator==(const ConfusionModel &) const = default;

   private:
    std::vector<ReadoutError> qubits_;
};

ConfusionModel build_confusion(const std::vector<double> &p01, const std::vector<double> &p10);

/// Estimates the model from two gate-noiseless calibration runs, |0...0> and
/// |1...1>, sampled with the noise model's readout errors. Throws for shots < 100.
ConfusionModel estimate_confusion(const NoiseModel &noise, uint32_t n_qubits, uint64_t shots, uint64_t seed);

/// Normalized bitstring weights that may be negative.
struct QuasiDistribution {
    uint32_t n_qubits = 0;
    uint64_t shots = 0;
    std::map<uint64_t, double> weights;

    double total() const;
};

/// Applies A_i^{-1} along every qubit axis of counts / shots. Only observed
/// bitstrings and their single-bit neighbours are ever touched.
QuasiDistribution correct_counts(const Counts &counts, const ConfusionModel &model);

/// Parity average of the corrected weights. The standard error is the binomial
/// one at the original shot count, multiplied by the model's amplification over
/// the observable's support.
Estimate corrected_expectation(const QuasiDistribution &q, const PauliString &obs, const ConfusionModel &model);

/// `qubit,p01,p10` rows with a header line.
void write_confusion_csv(std::ostream &out, const ConfusionModel &model);
ConfusionModel read_confusion_csv(std::istream &in);

}  // namespace dzne

#endif  // DZNE_READOUT_H
