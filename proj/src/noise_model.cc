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

#include "dzne/noise_model.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dzne {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
    }
}

}  // namespace

double NoiseModel::depol_2q(uint32_t a, uint32_t b) const {
    auto it = depol_2q_pairs.find({std::min(a, b), std::max(a, b)});
    return it == depol_2q_pairs.end() ? depol_2q_default : it->second;
}

void NoiseModel::set_depol_2q(uint32_t a, uint32_t b, double p) {
    depol_2q_pairs[{std::min(a, b), std::max(a, b)}] = p;
}

ReadoutError NoiseModel::readout_for(uint32_t q) const {
    return q < readout.size() ? readout[q] : ReadoutError{};
}

void NoiseModel::set_uniform_readout(uint32_t n, double p01, double p10) {
    readout.assign(n, ReadoutError{p01, p10});
}

bool NoiseModel::has_readout_error() const {
    return std::any_of(readout.begin(), readout.end(), [](const ReadoutError &r) { return r.p01 > 0 || r.p10 > 0; });
}

void NoiseModel::validate() const {
    check_probability(depol_2q_default, "two-qubit depolarizing probability");
    for (const auto &[pair, p] : depol_2q_pairs) {
        check_probability(p, "two-qubit depolarizing probability");
    }
    check_probability(depol_1q, "single-qubit depolarizing probability");
    for (const auto &r : readout) {
        check_probability(r.p01, "readout p01");
        check_probability(r.p10, "readout p10");
        if (r.p01 + r.p10 > 1) {
            throw std::invalid_argument("readout p01 + p10 must not exceed 1");
        }
    }
}

}  // namespace dzne
