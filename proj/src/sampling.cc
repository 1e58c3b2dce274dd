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

#include "dzne/sampling.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dzne/rng.h"

namespace dzne {

std::string Counts::bitstring(uint64_t index) const {
    std::string s(n_qubits, '0');
    for (uint32_t q = 0; q < n_qubits; q++) {
        if ((index >> q) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

uint64_t Counts::count(std::string_view bits) const {
    if (bits.size() != n_qubits) {
        throw std::invalid_argument("bitstring length does not match the qubit count");
    }
    uint64_t index = 0;
    for (uint32_t q = 0; q < n_qubits; q++) {
        if (bits[q] == '1') {
            index |= uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("bitstrings contain only 0 and 1");
        }
    }
    auto it = table.find(index);
    return it == table.end() ? 0 : it->second;
}

void Counts::add(uint64_t index, uint64_t n) {
    table[index] += n;
    shots += n;
}

Counts sample_counts(
    const DensityMatrix &rho,
    const PauliString &obs,
    uint64_t shots,
    std::span<const ReadoutError> readout,
    uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample_counts needs at least one shot");
    }
    const uint32_t n = rho.num_qubits();
    std::vector<ReadoutError> flips(n);
    bool any_flip = false;
    for (uint32_t q = 0; q < n && q < readout.size(); q++) {
        const auto &r = readout[q];
        if (!(r.p01 >= 0 && r.p01 <= 1 && r.p10 >= 0 && r.p10 <= 1)) {
            throw std::invalid_argument("readout probabilities must lie in [0,1]");
        }
        flips[q] = r;
        any_flip = any_flip || r.p01 > 0 || r.p10 > 0;
    }

    auto probs = measurement_distribution(rho, obs);
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (size_t k = 0; k < probs.size(); k++) {
        acc += std::max(probs[k], 0.0);
        cdf[k] = acc;
    }
    if (!(acc > 0)) {
        throw std::runtime_error("measurement distribution has no weight");
    }

    Rng rng(seed);
    std::vector<uint64_t> tally(probs.size(), 0);
    Counts counts;
    counts.n_qubits = n;
    for (uint64_t s = 0; s < shots; s++) {
        double u = rng.uniform() * acc;
        size_t k = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        k = std::min(k, cdf.size() - 1);
        if (any_flip) {
            for (uint32_t q = 0; q < n; q++) {
                bool bit = (k >> q) & 1;
                double p = bit ? flips[q].p01 : flips[q].p10;
                if (p > 0 && rng.uniform() < p) {
                    k ^= size_t{1} << q;
                }
            }
        }
        tally[k]++;
    }
    for (size_t k = 0; k < tally.size(); k++) {
        if (tally[k]) {
            counts.add(k, tally[k]);
        }
    }
    return counts;
}

Estimate expectation_from_counts(const Counts &counts, const PauliString &obs) {
    if (counts.table.empty() || counts.shots == 0) {
        throw std::invalid_argument("expectation_from_counts needs a non-empty record");
    }
    if (obs.size() != counts.n_qubits) {
        throw std::invalid_argument("observable length does not match the counts' qubit count");
    }
    const uint64_t support = obs.support_mask();
    int64_t signed_total = 0;
    for (const auto &[index, c] : counts.table) {
        signed_total += (std::popcount(index & support) & 1) ? -static_cast<int64_t>(c) : static_cast<int64_t>(c);
    }
    const double shots = static_cast<double>(counts.shots);
    double mean = obs.sign() * static_cast<double>(signed_total) / shots;
    return {mean, std::sqrt(std::max(0.0, 1 - mean * mean) / shots)};
}

}  // namespace dzne
