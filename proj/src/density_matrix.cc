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

#include "dzne/density_matrix.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dzne {

using cplx = std::complex<double>;

namespace {

// Entries below this magnitude are treated as structural zeros when deciding
// whether a gate matrix is diagonal or a phased permutation.
constexpr double kStructuralZero = 1e-12;

enum class Shape { Diagonal, Monomial, General };

struct GateShape {
    Shape shape = Shape::General;
    std::array<size_t, 4> row_of_col{};  // column l is sent to row row_of_col[l]
    std::array<cplx, 4> value{};         // u(row_of_col[l], l)
};

GateShape classify(const Eigen::MatrixXcd &u) {
    GateShape s;
    const auto d = static_cast<size_t>(u.rows());
    std::array<bool, 4> row_used{};
    bool diagonal = true;
    for (size_t l = 0; l < d; l++) {
        int hits = 0;
        for (size_t r = 0; r < d; r++) {
            if (std::abs(u(r, l)) > kStructuralZero) {
                hits++;
                s.row_of_col[l] = r;
                s.value[l] = u(r, l);
            }
        }
        if (hits != 1 || row_used[s.row_of_col[l]]) {
            s.shape = Shape::General;
            return s;
        }
        row_used[s.row_of_col[l]] = true;
        diagonal = diagonal && s.row_of_col[l] == l;
    }
    s.shape = diagonal ? Shape::Diagonal : Shape::Monomial;
    return s;
}

size_t local_index(size_t i, std::span<const uint32_t> qubits) {
    size_t l = 0;
    for (size_t t = 0; t < qubits.size(); t++) {
        l |= ((i >> qubits[t]) & 1) << t;
    }
    return l;
}

size_t with_local_index(size_t i, std::span<const uint32_t> qubits, size_t l) {
    for (size_t t = 0; t < qubits.size(); t++) {
        i &= ~(size_t{1} << qubits[t]);
        i |= ((l >> t) & 1) << qubits[t];
    }
    return i;
}

void check_targets(std::span<const uint32_t> qubits, uint32_t n) {
    if (qubits.empty() || qubits.size() > 2) {
        throw std::invalid_argument("operations act on one or two qubits");
    }
    for (uint32_t q : qubits) {
        if (q >= n) {
            throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
        }
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument("two-qubit operation on a repeated qubit");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(uint32_t n_qubits, bool) : n_(n_qubits), dim_(size_t{1} << n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "density matrices support 1.." + std::to_string(kMaxQubits) + " qubits, got " + std::to_string(n_qubits));
    }
}

DensityMatrix::DensityMatrix(uint32_t n_qubits) : DensityMatrix(n_qubits, true) {
    diag_.assign(dim_, 0.0);
    diag_[0] = 1.0;
}

DensityMatrix DensityMatrix::basis_state(uint32_t n_qubits, uint64_t index) {
    DensityMatrix rho(n_qubits);
    if (index >= rho.dim_) {
        throw std::out_of_range("basis index out of range");
    }
    rho.diag_[0] = 0;
    rho.diag_[index] = 1;
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(uint32_t n_qubits) {
    DensityMatrix rho(n_qubits);
    rho.diag_.assign(rho.dim_, 1.0 / static_cast<double>(rho.dim_));
    return rho;
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols() || m.rows() < 2 || !std::has_single_bit(static_cast<size_t>(m.rows()))) {
        throw std::invalid_argument("density matrix must be square with power-of-two dimension");
    }
    DensityMatrix rho(static_cast<uint32_t>(std::countr_zero(static_cast<size_t>(m.rows()))), true);
    rho.dense_.resize(rho.dim_ * rho.dim_);
    for (size_t i = 0; i < rho.dim_; i++) {
        for (size_t j = 0; j < rho.dim_; j++) {
            rho.dense_[i * rho.dim_ + j] = m(i, j);
        }
    }
    return rho;
}

cplx DensityMatrix::at(size_t row, size_t col) const {
    if (dense_.empty()) {
        return row == col ? cplx(diag_[row]) : cplx(0);
    }
    return dense_[row * dim_ + col];
}

Eigen::MatrixXcd DensityMatrix::to_matrix() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            m(i, j) = at(i, j);
        }
    }
    return m;
}

std::vector<double> DensityMatrix::diagonal() const {
    if (dense_.empty()) {
        return diag_;
    }
    std::vector<double> out(dim_);
    for (size_t i = 0; i < dim_; i++) {
        out[i] = dense_[i * dim_ + i].real();
    }
    return out;
}

double DensityMatrix::trace() const {
    double t = 0;
    for (double p : diagonal()) {
        t += p;
    }
    return t;
}

double DensityMatrix::hermiticity_error() const {
    if (dense_.empty()) {
        return 0;
    }
    double worst = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = i; j < dim_; j++) {
            worst = std::max(worst, std::abs(dense_[i * dim_ + j] - std::conj(dense_[j * dim_ + i])));
        }
    }
    return worst;
}

double DensityMatrix::min_eigenvalue() const {
    if (dense_.empty()) {
        return *std::min_element(diag_.begin(), diag_.end());
    }
    Eigen::MatrixXcd m = to_matrix();
    Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::densify() {
    if (!dense_.empty()) {
        return;
    }
    dense_.assign(dim_ * dim_, cplx(0));
    for (size_t i = 0; i < dim_; i++) {
        dense_[i * dim_ + i] = diag_[i];
    }
    diag_.clear();
    diag_.shrink_to_fit();
}

std::vector<size_t> DensityMatrix::outer_bases(uint64_t mask) const {
    std::vector<size_t> bases;
    bases.reserve(dim_ >> std::popcount(mask));
    for (size_t i = 0; i < dim_; i++) {
        if ((i & mask) == 0) {
            bases.push_back(i);
        }
    }
    return bases;
}

void DensityMatrix::apply_unitary(std::span<const uint32_t> qubits, const Eigen::MatrixXcd &u) {
    check_targets(qubits, n_);
    const size_t local_dim = size_t{1} << qubits.size();
    if (static_cast<size_t>(u.rows()) != local_dim || static_cast<size_t>(u.cols()) != local_dim) {
        throw std::invalid_argument("unitary size does not match the number of target qubits");
    }
    GateShape shape = classify(u);

    if (shape.shape != Shape::General) {
        // Phased permutation: index i goes to sigma[i] with factor f[i].
        std::vector<size_t> sigma(dim_);
        std::vector<cplx> f(dim_);
        for (size_t i = 0; i < dim_; i++) {
            size_t l = local_index(i, qubits);
            sigma[i] = shape.shape == Shape::Diagonal ? i : with_local_index(i, qubits, shape.row_of_col[l]);
            f[i] = shape.value[l];
        }
        if (dense_.empty()) {
            std::vector<double> out(dim_);
            for (size_t i = 0; i < dim_; i++) {
                out[sigma[i]] = std::norm(f[i]) * diag_[i];
            }
            diag_ = std::move(out);
            return;
        }
        if (shape.shape == Shape::Diagonal) {
            for (size_t i = 0; i < dim_; i++) {
                cplx *row = &dense_[i * dim_];
                for (size_t j = 0; j < dim_; j++) {
                    row[j] *= f[i] * std::conj(f[j]);
                }
            }
            return;
        }
        std::vector<cplx> out(dim_ * dim_);
        for (size_t i = 0; i < dim_; i++) {
            const cplx *row = &dense_[i * dim_];
            cplx *dst = &out[sigma[i] * dim_];
            for (size_t j = 0; j < dim_; j++) {
                dst[sigma[j]] = f[i] * std::conj(f[j]) * row[j];
            }
        }
        dense_ = std::move(out);
        return;
    }

    densify();
    uint64_t mask = 0;
    std::array<size_t, 4> off{};
    for (uint32_t q : qubits) {
        mask |= uint64_t{1} << q;
    }
    for (size_t l = 0; l < local_dim; l++) {
        off[l] = with_local_index(0, qubits, l);
    }
    const auto bases = outer_bases(mask);
    std::array<cplx, 4> v{}, w{};

    // Left multiply: rho <- U rho, column by column.
    for (size_t j = 0; j < dim_; j++) {
        for (size_t b : bases) {
            for (size_t l = 0; l < local_dim; l++) {
                v[l] = dense_[(b + off[l]) * dim_ + j];
            }
            for (size_t r = 0; r < local_dim; r++) {
                cplx acc = 0;
                for (size_t l = 0; l < local_dim; l++) {
                    acc += u(r, l) * v[l];
                }
                w[r] = acc;
            }
            for (size_t r = 0; r < local_dim; r++) {
                dense_[(b + off[r]) * dim_ + j] = w[r];
            }
        }
    }
    // Right multiply: rho <- rho U^dagger, row by row.
    for (size_t i = 0; i < dim_; i++) {
        cplx *row = &dense_[i * dim_];
        for (size_t b : bases) {
            for (size_t l = 0; l < local_dim; l++) {
                v[l] = row[b + off[l]];
            }
            for (size_t m = 0; m < local_dim; m++) {
                cplx acc = 0;
                for (size_t l = 0; l < local_dim; l++) {
                    acc += v[l] * std::conj(u(m, l));
                }
                w[m] = acc;
            }
            for (size_t m = 0; m < local_dim; m++) {
                row[b + off[m]] = w[m];
            }
        }
    }
}

void DensityMatrix::apply_depolarizing(std::span<const uint32_t> qubits, double p) {
    check_targets(qubits, n_);
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("depolarizing probability must lie in [0,1]");
    }
    if (p == 0) {
        return;
    }
    // sum over all 4^k Paulis of P rho P = 2^k (I ⊗ Tr_k rho), so the channel is
    // (1-c) rho + c (I/2^k ⊗ Tr_k rho) with c = p 4^k / (4^k - 1).
    const size_t local_dim = size_t{1} << qubits.size();
    const double four_k = static_cast<double>(local_dim * local_dim);
    const double c = p * four_k / (four_k - 1);
    const double keep = 1 - c;
    const double spread = c / static_cast<double>(local_dim);

    uint64_t mask = 0;
    std::array<size_t, 4> off{};
    for (uint32_t q : qubits) {
        mask |= uint64_t{1} << q;
    }
    for (size_t l = 0; l < local_dim; l++) {
        off[l] = with_local_index(0, qubits, l);
    }
    const auto bases = outer_bases(mask);

    if (dense_.empty()) {
        for (size_t b : bases) {
            double t = 0;
            for (size_t l = 0; l < local_dim; l++) {
                t += diag_[b + off[l]];
            }
            for (size_t l = 0; l < local_dim; l++) {
                diag_[b + off[l]] = keep * diag_[b + off[l]] + spread * t;
            }
        }
        return;
    }
    for (size_t bi : bases) {
        for (size_t bj : bases) {
            cplx t = 0;
            for (size_t l = 0; l < local_dim; l++) {
                t += dense_[(bi + off[l]) * dim_ + bj + off[l]];
            }
            for (size_t l = 0; l < local_dim; l++) {
                for (size_t m = 0; m < local_dim; m++) {
                    dense_[(bi + off[l]) * dim_ + bj + off[m]] *= keep;
                }
                dense_[(bi + off[l]) * dim_ + bj + off[l]] += spread * t;
            }
        }
    }
}

void DensityMatrix::apply_zz_rotation(uint32_t a, uint32_t b, double eps) {
    const uint32_t pair[2] = {a, b};
    check_targets(pair, n_);
    // Reduced modulo 2pi so that eps = 2pi is an exact identity.
    const double r = std::remainder(eps, 2 * std::numbers::pi);
    if (r == 0 || dense_.empty()) {
        return;  // diagonal states commute with ZZ
    }
    const cplx down = std::polar(1.0, -r);  // s_i = +1, s_j = -1
    const cplx up = std::conj(down);        // s_i = -1, s_j = +1
    std::vector<int> s(dim_);
    for (size_t i = 0; i < dim_; i++) {
        s[i] = (((i >> a) ^ (i >> b)) & 1) ? -1 : 1;
    }
    for (size_t i = 0; i < dim_; i++) {
        cplx *row = &dense_[i * dim_];
        for (size_t j = 0; j < dim_; j++) {
            if (s[i] != s[j]) {
                row[j] *= s[i] > 0 ? down : up;
            }
        }
    }
}

void DensityMatrix::write_diagonal_csv(std::ostream &out) const {
    out << "index,probability\n";
    auto d = diagonal();
    for (size_t i = 0; i < d.size(); i++) {
        out << i << ',' << d[i] << '\n';
    }
}

void apply_gate(DensityMatrix &rho, const Gate &gate) {
    rho.apply_unitary(gate.qubits, gate_unitary(gate));
}

void apply_depolarizing(DensityMatrix &rho, std::span<const uint32_t> qubits, double p) {
    rho.apply_depolarizing(qubits, p);
}

void apply_coherent_error(DensityMatrix &rho, uint32_t a, uint32_t b, double eps) {
    rho.apply_zz_rotation(a, b, eps);
}

DensityMatrix simulate(const Circuit &circuit, const NoiseModel &noise) {
    if (auto report = validate_native(circuit); !report) {
        throw std::invalid_argument("cannot simulate: " + report.message);
    }
    if (circuit.num_qubits() > DensityMatrix::kMaxQubits) {
        throw std::invalid_argument(
            "circuit has " + std::to_string(circuit.num_qubits()) + " qubits; the simulator limit is " +
            std::to_string(DensityMatrix::kMaxQubits));
    }
    DensityMatrix rho(circuit.num_qubits());
    for (const Gate &g : circuit.gates()) {
        apply_gate(rho, g);
        if (g.is_twirl_frame) {
            continue;
        }
        if (g.is_two_qubit()) {
            double p = noise.depol_2q(g.qubits[0], g.qubits[1]);
            if (p > 0) {
                rho.apply_depolarizing(g.qubits, p);
            }
            if (noise.coherent_epsilon != 0) {
                rho.apply_zz_rotation(g.qubits[0], g.qubits[1], noise.coherent_epsilon);
            }
        } else if (noise.depol_1q > 0) {
            rho.apply_depolarizing(g.qubits, noise.depol_1q);
        }
    }
    return rho;
}

double exact_expectation(const DensityMatrix &rho, const PauliString &obs) {
    if (obs.size() != rho.num_qubits()) {
        throw std::invalid_argument("observable length does not match the state's qubit count");
    }
    const uint64_t x = obs.x_mask();
    const uint64_t z = obs.z_mask();
    if (rho.is_diagonal_form() && x != 0) {
        return 0;
    }
    // P|j> = i^{#Y} (-1)^{|j & z|} |j ^ x>, so tr(rho P) = sum_j rho[j, j^x] * phase(j).
    const int n_y = std::popcount(x & z);
    static const cplx kPowI[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    const cplx iy = kPowI[n_y % 4];
    cplx acc = 0;
    for (size_t j = 0; j < rho.dim(); j++) {
        cplx term = rho.at(j, j ^ x);
        acc += (std::popcount(j & z) & 1) ? -term : term;
    }
    acc *= iy;
    return obs.sign() * acc.real();
}

std::vector<double> measurement_distribution(const DensityMatrix &rho, const PauliString &obs) {
    if (obs.size() != rho.num_qubits()) {
        throw std::invalid_argument("observable length does not match the state's qubit count");
    }
    if (obs.is_diagonal()) {
        return rho.diagonal();
    }
    const double h = 1 / std::sqrt(2.0);
    Eigen::MatrixXcd hadamard(2, 2);
    hadamard << h, h, h, -h;
    Eigen::MatrixXcd sdg = Eigen::MatrixXcd::Identity(2, 2);
    sdg(1, 1) = cplx(0, -1);
    const Eigen::MatrixXcd y_to_z = hadamard * sdg;

    DensityMatrix rotated = rho;
    for (uint32_t q = 0; q < obs.size(); q++) {
        const uint32_t target[1] = {q};
        if (obs[q] == 'X') {
            rotated.apply_unitary(target, hadamard);
        } else if (obs[q] == 'Y') {
            rotated.apply_unitary(target, y_to_z);
        }
    }
    return rotated.diagonal();
}

double exact_expectation_with_readout(
    const DensityMatrix &rho, const PauliString &obs, std::span<const ReadoutError> readout) {
    auto probs = measurement_distribution(rho, obs);
    // Each measured bit contributes E[(-1)^read | true bit]:
    // 1 - 2 p10 for a true 0 and -(1 - 2 p01) for a true 1.
    std::vector<std::array<double, 2>> factor;
    for (uint32_t q = 0; q < obs.size(); q++) {
        ReadoutError r = q < readout.size() ? readout[q] : ReadoutError{};
        factor.push_back({1 - 2 * r.p10, -(1 - 2 * r.p01)});
    }
    const uint64_t support = obs.support_mask();
    double acc = 0;
    for (size_t j = 0; j < probs.size(); j++) {
        double term = probs[j];
        for (uint32_t q = 0; q < obs.size(); q++) {
            if ((support >> q) & 1) {
                term *= factor[q][(j >> q) & 1];
            }
        }
        acc += term;
    }
    return obs.sign() * acc;
}

}  // namespace dzne
