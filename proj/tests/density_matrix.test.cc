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

#include <numbers>

#include "gtest/gtest.h"

#include "oracle.test.h"

using namespace dzne;

namespace {

double max_abs(const Eigen::MatrixXcd &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(density_matrix, apply_gate_examples) {
    DensityMatrix a(1);
    apply_gate(a, Gate::x(0));
    EXPECT_EQ(a.at(1, 1), 1.0);
    EXPECT_EQ(a.at(0, 0), 0.0);

    DensityMatrix b(2);
    apply_gate(b, Gate::cz(0, 1));
    EXPECT_EQ(b.at(0, 0), 1.0);
    EXPECT_EQ(b.trace(), 1.0);

    Rng rng(1);
    auto m = oracle::random_density(2, rng);
    DensityMatrix c = DensityMatrix::from_matrix(m);
    apply_gate(c, Gate::u3(1, 0, 0, 0));
    EXPECT_LT(max_abs(c.to_matrix() - m), 1e-15);
}

TEST(density_matrix, gates_match_full_matrix_oracle) {
    Rng rng(2);
    for (int k = 0; k < 100; k++) {
        const uint32_t n = 1 + static_cast<uint32_t>(rng.below(4));
        auto m = oracle::random_density(n, rng);
        Circuit c = oracle::random_circuit(n, 1, rng);
        const Gate &g = c.gates()[0];
        DensityMatrix rho = DensityMatrix::from_matrix(m);
        apply_gate(rho, g);
        auto u = oracle::embed(oracle::gate_matrix(g), g.qubits, n);
        EXPECT_LT(max_abs(rho.to_matrix() - u * m * u.adjoint()), 1e-12) << g.str();
    }
}

TEST(density_matrix, depolarizing_matches_pauli_sum_oracle) {
    Rng rng(3);
    for (int k = 0; k < 60; k++) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng.below(2));
        auto m = oracle::random_density(n, rng);
        const double p = rng.uniform();
        std::vector<uint32_t> qs{static_cast<uint32_t>(rng.below(n))};
        if (k % 2) {
            uint32_t b = static_cast<uint32_t>(rng.below(n - 1));
            qs.push_back(b >= qs[0] ? b + 1 : b);
        }
        DensityMatrix rho = DensityMatrix::from_matrix(m);
        apply_depolarizing(rho, qs, p);
        EXPECT_LT(max_abs(rho.to_matrix() - oracle::depolarize(m, qs, p, n)), 1e-12);
    }
}

TEST(density_matrix, depolarizing_examples) {
    Rng rng(4);
    auto m = oracle::random_density(2, rng);
    DensityMatrix rho = DensityMatrix::from_matrix(m);
    const auto before = rho.to_matrix();
    uint32_t qs[2] = {0, 1};
    apply_depolarizing(rho, qs, 0);
    EXPECT_EQ(rho.to_matrix(), before);

    // p = 15/16 on both qubits maps any state to the maximally mixed one.
    DensityMatrix bell(2);
    apply_gate(bell, Gate::u3(0, std::numbers::pi / 2, 0, std::numbers::pi));
    apply_gate(bell, Gate::cnot(0, 1));
    apply_depolarizing(bell, qs, 15.0 / 16);
    EXPECT_LT(max_abs(bell.to_matrix() - Eigen::MatrixXcd::Identity(4, 4) / 4.0), 1e-15);
    EXPECT_NEAR(exact_expectation(bell, PauliString("ZZ")), 0, 1e-12);
    EXPECT_NEAR(exact_expectation(bell, PauliString("XX")), 0, 1e-12);

    // k = 1, p = 3/4: <Z> = 1 - (4/3) p = 0.
    DensityMatrix one(1);
    uint32_t q0[1] = {0};
    apply_depolarizing(one, q0, 0.75);
    auto brute = oracle::depolarize(DensityMatrix(1).to_matrix(), {0}, 0.75, 1);
    EXPECT_NEAR(oracle::expectation(brute, PauliString("Z")), 0, 1e-15);
    EXPECT_NEAR(exact_expectation(one, PauliString("Z")), 0, 1e-15);
}

TEST(density_matrix, coherent_error_examples) {
    Rng rng(5);
    auto m = oracle::random_density(2, rng);
    DensityMatrix rho = DensityMatrix::from_matrix(m);
    apply_coherent_error(rho, 0, 1, 0);
    EXPECT_EQ(rho.to_matrix(), DensityMatrix::from_matrix(m).to_matrix());
    apply_coherent_error(rho, 0, 1, 2 * std::numbers::pi);
    EXPECT_LT(max_abs(rho.to_matrix() - m), 1e-15);

    // |++>, eps = pi/2: XI anticommutes with ZZ and vanishes, XX commutes and stays 1.
    DensityMatrix plus(2);
    apply_gate(plus, Gate::u3(0, std::numbers::pi / 2, 0, std::numbers::pi));
    apply_gate(plus, Gate::u3(1, std::numbers::pi / 2, 0, std::numbers::pi));
    EXPECT_NEAR(exact_expectation(plus, PauliString("XX")), 1, 1e-12);
    auto before = plus.to_matrix();
    apply_coherent_error(plus, 0, 1, std::numbers::pi / 2);
    auto v = oracle::zz_rotation(0, 1, std::numbers::pi / 2, 2);
    oracle::Mat brute = v * before * v.adjoint();
    EXPECT_NEAR(oracle::expectation(brute, PauliString("XI")), 0, 1e-12);
    EXPECT_NEAR(exact_expectation(plus, PauliString("XI")), 0, 1e-12);
    EXPECT_NEAR(exact_expectation(plus, PauliString("XX")), 1, 1e-12);
    EXPECT_LT(max_abs(plus.to_matrix() - brute), 1e-12);
}

TEST(density_matrix, simulate_matches_oracle) {
    Rng rng(6);
    for (int k = 0; k < 25; k++) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng.below(2));
        Circuit c = oracle::random_circuit(n, 15, rng);
        NoiseModel noise = NoiseModel::depolarizing(rng.uniform(0, 0.1));
        noise.coherent_epsilon = rng.uniform(-0.3, 0.3);
        noise.depol_1q = k % 3 == 0 ? 0.01 : 0;
        auto rho = simulate(c, noise);
        EXPECT_LT(max_abs(rho.to_matrix() - oracle::simulate(c, noise)), 1e-12);
    }
}

TEST(density_matrix, simulate_examples) {
    auto rho = simulate(build_spin_chain(6, 0, 0.1, 0, 0, 1), NoiseModel{});
    EXPECT_EQ(rho.at(0b101010, 0b101010), 1.0);
    EXPECT_EQ(rho.trace(), 1.0);

    auto noisy = simulate(build_brickwork(2, 1, EntanglerKind::CZ), NoiseModel::depolarizing(0.01));
    EXPECT_NEAR(noisy.trace(), 1, 1e-12);
    EXPECT_LT(noisy.hermiticity_error(), 1e-12);

    Rng rng(7);
    Circuit c = oracle::random_circuit(3, 20, rng);
    Circuit both = c;
    both.append(dagger(c));
    auto back = simulate(both, NoiseModel{});
    EXPECT_NEAR(back.at(0, 0).real(), 1, 1e-10);
}

TEST(density_matrix, twirl_frames_are_noiseless) {
    Circuit c(2);
    Gate f = Gate::x(0);
    f.is_twirl_frame = true;
    c.append(f);
    NoiseModel noise;
    noise.depol_1q = 0.5;
    auto rho = simulate(c, noise);
    EXPECT_EQ(exact_expectation(rho, PauliString("ZI")), -1.0);
}

TEST(density_matrix, expectation_examples) {
    auto rho = DensityMatrix::basis_state(6, 0b101010);
    EXPECT_EQ(exact_expectation(rho, PauliString::z_at(6, 0)), 1.0);
    EXPECT_EQ(exact_expectation(rho, PauliString::z_at(6, 1)), -1.0);
    EXPECT_EQ(exact_expectation(rho, PauliString::parse("-ZIIIII")), -1.0);
    auto mixed = DensityMatrix::maximally_mixed(3);
    for (const char *p : {"XII", "ZZY", "YYY", "IZI"}) {
        EXPECT_NEAR(exact_expectation(mixed, PauliString(p)), 0, 1e-15);
    }
    Rng rng(8);
    auto m = oracle::random_density(3, rng);
    EXPECT_NEAR(exact_expectation(DensityMatrix::from_matrix(m), PauliString("III")), 1, 1e-12);
    EXPECT_THROW(exact_expectation(mixed, PauliString("ZZ")), std::invalid_argument);
}

TEST(density_matrix, expectation_matches_oracle) {
    Rng rng(9);
    for (int k = 0; k < 100; k++) {
        const uint32_t n = 1 + static_cast<uint32_t>(rng.below(4));
        auto m = oracle::random_density(n, rng);
        PauliString p(oracle::random_pauli_letters(n, rng), rng.bernoulli(0.5) ? 1 : -1);
        EXPECT_NEAR(exact_expectation(DensityMatrix::from_matrix(m), p), oracle::expectation(m, p), 1e-12);
    }
}

TEST(density_matrix, channel_invariants_over_random_applications) {
    Rng rng(10);
    DensityMatrix rho = DensityMatrix::from_matrix(oracle::random_density(4, rng));
    for (int k = 0; k < 1000; k++) {
        const uint64_t which = rng.below(3);
        uint32_t a = static_cast<uint32_t>(rng.below(4));
        uint32_t b = static_cast<uint32_t>(rng.below(3));
        if (b >= a) {
            b++;
        }
        uint32_t qs[2] = {a, b};
        if (which == 0) {
            apply_gate(rho, oracle::random_circuit(4, 1, rng).gates()[0]);
        } else if (which == 1) {
            apply_depolarizing(rho, std::span<const uint32_t>(qs, 1 + rng.below(2)), rng.uniform());
        } else {
            apply_coherent_error(rho, a, b, rng.uniform(-7, 7));
        }
        ASSERT_NEAR(rho.trace(), 1, 1e-10) << k;
        ASSERT_LT(rho.hermiticity_error(), 1e-10) << k;
        for (const char *p : {"ZIZI", "XYII", "IIYZ"}) {
            double v = exact_expectation(rho, PauliString(p));
            ASSERT_LE(std::abs(v), 1 + 1e-9);
        }
    }
    EXPECT_GE(rho.min_eigenvalue(), -1e-9);
}

TEST(density_matrix, diagonal_form_survives_diagonal_dynamics) {
    NoiseModel noise = NoiseModel::depolarizing(0.02);
    noise.coherent_epsilon = 0.15;
    auto rho = simulate(build_spin_chain(8, 5, 0, 0, 0, 3), noise);
    EXPECT_TRUE(rho.is_diagonal_form());
    auto dense = oracle::simulate(build_spin_chain(6, 2, 0, 0, 0, 3), noise);
    auto mine = simulate(build_spin_chain(6, 2, 0, 0, 0, 3), noise);
    EXPECT_LT(max_abs(mine.to_matrix() - dense), 1e-12);
}

TEST(density_matrix, exact_readout_expectation) {
    // Single qubit |0>, readout p10: <Z> = 1 - 2 p10.
    std::vector<ReadoutError> r{{0.02, 0.01}};
    EXPECT_NEAR(exact_expectation_with_readout(DensityMatrix(1), PauliString("Z"), r), 0.98, 1e-15);
    EXPECT_NEAR(exact_expectation_with_readout(DensityMatrix::basis_state(1, 1), PauliString("Z"), r), -0.96, 1e-15);
}

TEST(density_matrix, qubit_limit) {
    EXPECT_THROW(DensityMatrix(DensityMatrix::kMaxQubits + 1), std::invalid_argument);
    EXPECT_THROW(simulate(Circuit(13), NoiseModel{}), std::invalid_argument);
}
