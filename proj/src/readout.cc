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

#include "dzne/readout.h"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "dzne/density_matrix.h"
#include "dzne/rng.h"
#include "dzne/text_util.h"

namespace dzne {

ConfusionModel::ConfusionModel(std::vector<ReadoutError> qubits) : qubits_(std::move(qubits)) {
    for (const auto &r : qubits_) {
        if (!(r.p01 >= 0 && r.p01 <= 1 && r.p10 >= 0 && r.p10 <= 1)) {
            throw std::invalid_argument("readout probabilities must lie in [0,1]");
        }
        if (r.p01 + r.p10 >= 1) {
            throw std::invalid_argument("confusion matrix is singular (p01 + p10 >= 1)");
        }
    }
}

Eigen::Matrix2d ConfusionModel::matrix(size_t q) const {
    const auto &r = qubits_.at(q);
    Eigen::Matrix2d a;
    a << 1 - r.p10, r.p01, r.p10, 1 - r.p01;
    return a;
}

Eigen::Matrix2d ConfusionModel::inverse_matrix(size_t q) const {
    const auto &r = qubits_.at(q);
    const double det = 1 - r.p01 - r.p10;
    Eigen::Matrix2d inv;
    inv << 1 - r.p01, -r.p01, -r.p10, 1 - r.p10;
    return inv / det;
}

double ConfusionModel::amplification(uint64_t mask) const {
    double f = 1;
    for (size_t q = 0; q < qubits_.size(); q++) {
        if ((mask >> q) & 1) {
            f /= 1 - qubits_[q].p01 - qubits_[q].p10;
        }
    }
    return f;
}

ConfusionModel build_confusion(const std::vector<double> &p01, const std::vector<double> &p10) {
    if (p01.size() != p10.size()) {
        throw std::invalid_argument("p01 and p10 lists differ in length");
    }
    std::vector<ReadoutError> qubits(p01.size());
    for (size_t q = 0; q < qubits.size(); q++) {
        qubits[q] = {p01[q], p10[q]};
    }
    return ConfusionModel(std::move(qubits));
}

ConfusionModel estimate_confusion(const NoiseModel &noise, uint32_t n_qubits, uint64_t shots, uint64_t seed) {
    if (shots < 100) {
        throw std::invalid_argument("readout calibration needs at least 100 shots");
    }
    std::vector<ReadoutError> truth(n_qubits);
    for (uint32_t q = 0; q < n_qubits; q++) {
        truth[q] = noise.readout_for(q);
    }
    const auto obs = PauliString::z_all(n_qubits);
    const uint64_t ones = n_qubits == 64 ? ~uint64_t{0} : (uint64_t{1} << n_qubits) - 1;
    Counts zeros = sample_counts(DensityMatrix(n_qubits), obs, shots, truth, derive_seed(seed, {0}));
    Counts all = sample_counts(DensityMatrix::basis_state(n_qubits, ones), obs, shots, truth, derive_seed(seed, {1}));

    std::vector<uint64_t> flipped_up(n_qubits, 0);
    std::vector<uint64_t> flipped_down(n_qubits, 0);
    for (const auto &[index, c] : zeros.table) {
        for (uint32_t q = 0; q < n_qubits; q++) {
            if ((index >> q) & 1) {
                flipped_up[q] += c;
            }
        }
    }
    for (const auto &[index, c] : all.table) {
        for (uint32_t q = 0; q < n_qubits; q++) {
            if (!((index >> q) & 1)) {
                flipped_down[q] += c;
            }
        }
    }
    std::vector<ReadoutError> est(n_qubits);
    const double s = static_cast<double>(shots);
    for (uint32_t q = 0; q < n_qubits; q++) {
        est[q] = {flipped_down[q] / s, flipped_up[q] / s};
    }
    return ConfusionModel(std::move(est));
}

double QuasiDistribution::total() const {
    double t = 0;
    for (const auto &[_, w] : weights) {
        t += w;
    }
    return t;
}

QuasiDistribution correct_counts(const Counts &counts, const ConfusionModel &model) {
    if (model.num_qubits() != counts.n_qubits) {
        throw std::invalid_argument("confusion model and counts have different qubit counts");
    }
    if (counts.shots == 0) {
        throw std::invalid_argument("cannot correct an empty record");
    }
    QuasiDistribution out;
    out.n_qubits = counts.n_qubits;
    out.shots = counts.shots;
    const double shots = static_cast<double>(counts.shots);
    for (const auto &[index, c] : counts.table) {
        out.weights[index] = static_cast<double>(c) / shots;
    }
    for (uint32_t q = 0; q < counts.n_qubits; q++) {
        const auto &r = model[q];
        if (r.p01 == 0 && r.p10 == 0) {
            continue;
        }
        const Eigen::Matrix2d inv = model.inverse_matrix(q);
        const uint64_t bit = uint64_t{1} << q;
        std::map<uint64_t, double> next;
        for (const auto &[index, w] : out.weights) {
            const int t = (index & bit) ? 1 : 0;
            const uint64_t base = index & ~bit;
            next[base] += inv(0, t) * w;
            next[base | bit] += inv(1, t) * w;
        }
        out.weights = std::move(next);
    }
    return out;
}

Estimate corrected_expectation(const QuasiDistribution &q, const PauliString &obs, const ConfusionModel &model) {
    if (obs.size() != q.n_qubits) {
        throw std::invalid_argument("observable length does not match the distribution's qubit count");
    }
    const uint64_t support = obs.support_mask();
    double mean = 0;
    for (const auto &[index, w] : q.weights) {
        mean += (std::popcount(index & support) & 1) ? -w : w;
    }
    mean *= obs.sign();
    const double clipped = std::min(1.0, mean * mean);
    double se = std::sqrt((1 - clipped) / static_cast<double>(q.shots)) * model.amplification(support);
    return {mean, se};
}

void write_confusion_csv(std::ostream &out, const ConfusionModel &model) {
    out << "qubit,p01,p10\n";
    for (size_t q = 0; q < model.num_qubits(); q++) {
        out << q << ',' << format_double(model[q].p01) << ',' << format_double(model[q].p10) << '\n';
    }
}

ConfusionModel read_confusion_csv(std::istream &in) {
    std::string line;
    std::vector<ReadoutError> qubits;
    bool header = true;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (header) {
            header = false;
            if (t != "qubit,p01,p10") {
                throw std::invalid_argument("confusion CSV must start with 'qubit,p01,p10'");
            }
            continue;
        }
        auto cols = split(t, ',');
        if (cols.size() != 3) {
            throw std::invalid_argument("confusion CSV rows need 3 columns");
        }
        double q = parse_double(trim(cols[0]));
        if (q != static_cast<double>(qubits.size())) {
            throw std::invalid_argument("confusion CSV rows must list qubits 0, 1, 2, ... in order");
        }
        qubits.push_back({parse_double(trim(cols[1])), parse_double(trim(cols[2]))});
    }
    return ConfusionModel(std::move(qubits));
}

}  // namespace dzne
