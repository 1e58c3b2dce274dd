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

#ifndef DZNE_SAMPLING_H
#define DZNE_SAMPLING_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "dzne/density_matrix.h"
#include "dzne/noise_model.h"
#include "dzne/pauli.h"

namespace dzne {

/// Measurement record: basis index (bit q = qubit q) -> number of shots.
struct Counts {
    uint32_t n_qubits = 0;
    uint64_t shots = 0;
    std::map<uint64_t, uint64_t> table;

    /// Character q is the bit of qubit q, e.g. "010101" has qubit 1 set.
    std::string bitstring(uint64_t index) const;
    uint64_t count(std::string_view bits) const;
    void add(uint64_t index, uint64_t n = 1);
    bool operator==(const Counts &) const = default;
};

/// Mean and standard error of an estimated expectation value.
struct Estimate {
    double mean = 0;
    double std_error = 0;
};

/// Draws `shots` measurement outcomes of `obs` from rho.
///
/// X and Y letters are first rotated into the Z basis (H and H·S^dagger).
/// Every measured bit is then flipped independently with p10 (true 0) or p01
/// (true 1). Deterministic in `seed`.
Counts sample_counts(
    const DensityMatrix &rho,
    const PauliString &obs,
    uint64_t shots,
    std::span<const ReadoutError> readout,
    uint64_t seed);

/// Parity average over the observable's support times its sign;
/// std_error = sqrt((1 - mean^2) / shots).
Estimate expectation_from_counts(const Counts &counts, const PauliString &obs);

}  // namespace dzne

#endif  // DZNE_SAMPLING_H
