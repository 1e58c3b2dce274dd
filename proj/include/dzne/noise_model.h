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

#ifndef DZNE_NOISE_MODEL_H
#define DZNE_NOISE_MODEL_H

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dzne {

/// Per-qubit readout flip probabilities.
struct ReadoutError {
    double p01 = 0;  ///< P(read 0 | true 1)
    double p10 = 0;  ///< P(read 1 | true 0)

    bool operator==(const ReadoutError &) const = default;
};

/// Gate and measurement noise seen by the simulator.
///
/// After every two-qubit gate: depolarizing with the pair's probability, then
/// the coherent over-rotation exp(-i eps/2 Z⊗Z). After every single-qubit gate:
/// depolarizing with depol_1q. Twirl frames are noiseless.
struct NoiseModel {
    double depol_2q_default = 0;
    /// Overrides keyed by (min qubit, max qubit).
    std::map<std::pair<uint32_t, uint32_t>, double> depol_2q_pairs;
    double depol_1q = 0;
    double coherent_epsilon = 0;
    /// Empty means perfect readout; otherwise one entry per qubit.
    std::vector<ReadoutError> readout;

    static NoiseModel depolarizing(double p2q) {
        NoiseModel m;
        m.depol_2q_default = p2q;
        return m;
    }

    double depol_2q(uint32_t a, uint32_t b) const;
    void set_depol_2q(uint32_t a, uint32_t b, double p);
    ReadoutError readout_for(uint32_t q) const;
    /// Uniform readout error on n qubits.
    void set_uniform_readout(uint32_t n, double p01, double p10);
    bool has_readout_error() const;

    /// Throws std::invalid_argument when a probability is outside [0,1] or p01+p10 > 1.
    void validate() const;
};

}  // namespace dzne

#endif  // DZNE_NOISE_MODEL_H
