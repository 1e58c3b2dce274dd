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

#ifndef DZNE_DENSITY_MATRIX_H
#define DZNE_DENSITY_MATRIX_H

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dzne/circuit.h"
#include "dzne/noise_model.h"
#include "dzne/pauli.h"

namespace dzne {

/// Dense density matrix over n <= kMaxQubits qubits.
///
/// Basis index bit q holds qubit q. The matrix starts out stored as its
/// diagonal only and stays that way for as long as every operation maps
/// diagonal states to diagonal states (diagonal or monomial unitaries,
/// depolarizing, ZZ phases). The first operation that creates coherences
/// expands it to the full 2^n x 2^n row-major matrix.
class DensityMatrix {
   public:
    static constexpr uint32_t kMaxQubits = 12;

    /// |0...0><0...0|.
    explicit DensityMatrix(uint32_t n_qubits);

    static DensityMatrix basis_state(uint32_t n_qubits, uint64_t index);
    static DensityMatrix maximally_mixed(uint32_t n_qubits);
    /// Copies an arbitrary 2^n x 2^n matrix; no physicality check.
    static DensityMatrix from_matrix(const Eigen::MatrixXcd &m);

    uint32_t num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return dim_;
    }
    /// True while only the diagonal is stored (all off-diagonal entries are exactly zero).
    bool is_diagonal_form() const {
        return dense_.empty();
    }

    std::complex<double> at(size_t row, size_t col) const;
    Eigen::MatrixXcd to_matrix() const;
    /// Real parts of the diagonal, i.e. computational-basis probabilities.
    std::vector<double> diagonal() const;

    double trace() const;
    /// max |rho_ij - conj(rho_ji)|.
    double hermiticity_error() const;
    /// Smallest eigenvalue; O(8^n), meant for tests.
    double min_eigenvalue() const;

    /// rho -> U rho U^dagger on one or two qubits; U is 2x2 or 4x4 with
    /// qubits[0] as the least significant local index bit.
    void apply_unitary(std::span<const uint32_t> qubits, const Eigen::MatrixXcd &u);
    /// rho -> (1-p) rho + p/(4^k-1) sum_{P != I} P rho P on the k target qubits.
    void apply_depolarizing(std::span<const uint32_t> qubits, double p);
    /// rho -> V rho V^dagger with V = exp(-i eps/2 Z_a Z_b).
    void apply_zz_rotation(uint32_t a, uint32_t b, double eps);

    /// Writes `index,probability` rows for debugging.
    void write_diagonal_csv(std::ostream &out) const;

   private:
    DensityMatrix(uint32_t n_qubits, bool);
    void densify();
    std::vector<size_t> outer_bases(uint64_t mask) const;

    uint32_t n_;
    size_t dim_;
    std::vector<double> diag_;                // used in diagonal form
    std::vector<std::complex<double>> dense_;  // used otherwise
};

/// Applies the gate's exact unitary in place.
void apply_gate(DensityMatrix &rho, const Gate &gate);
void apply_depolarizing(DensityMatrix &rho, std::span<const uint32_t> qubits, double p);
void apply_coherent_error(DensityMatrix &rho, uint32_t a, uint32_t b, double eps);

/// Runs the circuit from |0...0> under the noise model.
///
/// Throws std::invalid_argument for non-native circuits or more than
/// DensityMatrix::kMaxQubits qubits.
DensityMatrix simulate(const Circuit &circuit, const NoiseModel &noise);

/// sign * tr(rho P).
double exact_expectation(const DensityMatrix &rho, const PauliString &obs);

/// Exact expectation of the observable as read through independent per-qubit
/// readout flips, i.e. with the tensored confusion channel applied to the
/// measured distribution.
double exact_expectation_with_readout(
    const DensityMatrix &rho, const PauliString &obs, std::span<const ReadoutError> readout);

/// Outcome distribution after rotating every X/Y letter of `obs` into the Z basis.
std::vector<double> measurement_distribution(const DensityMatrix &rho, const PauliString &obs);

}  // namespace dzne

#endif  // DZNE_DENSITY_MATRIX_H
