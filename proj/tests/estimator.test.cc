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

#include "dzne/estimator.h"

#include "gtest/gtest.h"

#include "dzne/density_matrix.h"
#include "dzne/rng.h"

using namespace dzne;

namespace {

EstimatorJob chain_job(uint32_t n, uint32_t steps, uint64_t seed) {
    EstimatorJob job;
    job.circuit = build_spin_chain(n, steps, 0.3, 0.2, 0.1, 7);
    for (uint32_t q = 0; q < n; q++) {
        job.observables.push_back(PauliString::z_at(n, q));
    }
    job.models = {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::exponential()};
    job.seed = seed;
    return job;
}

}  // namespace

TEST(estimator, allocate_shots_examples) {
    EXPECT_EQ(allocate_shots(8000, 3, 0), (std::vector<uint64_t>{2667, 2667, 2666}));
    EXPECT_EQ(allocate_shots(16384, 1, 16), std::vector<uint64_t>(16, 1024));
    EXPECT_EQ(allocate_shots(10, 2, 3), (std::vector<uint64_t>{2, 2, 2, 2, 1, 1}));
    EXPECT_THROW(allocate_shots(5, 2, 3), std::invalid_argument);
    EXPECT_THROW(allocate_shots(5, 0, 3), std::invalid_argument);
}

TEST(estimator, allocate_shots_conserves_total) {
    Rng rng(1);
    for (int k = 0; k < 500; k++) {
        size_t s = 1 + rng.below(6), t = rng.below(20);
        uint64_t v = s * std::max<size_t>(t, 1);
        uint64_t total = v + rng.below(100000);
        auto a = allocate_shots(total, s, t);
        ASSERT_EQ(a.size(), v);
        uint64_t sum = 0;
        for (auto x : a) {
            sum += x;
            EXPECT_LE(a.front() - x, 1u);
        }
        EXPECT_EQ(sum, total);
    }
}

TEST(estimator, execution_plan_order) {
    EstimatorJob job = chain_job(2, 1, 5);
    job.fold_samples = 2;
    job.num_twirls = 3;
    job.total_shots_per_factor = 600;
    auto plan = build_execution_plan(job);
    ASSERT_EQ(plan.size(), 2u * 3 * 2 * 3);
    size_t i = 0;
    for (size_t s = 0; s < 2; s++) {
        for (size_t t = 0; t < 3; t++) {
            for (size_t o = 0; o < 2; o++) {
                for (size_t f = 0; f < 3; f++) {
                    const auto &v = plan[i];
                    EXPECT_EQ(v.index, i);
                    EXPECT_EQ(v.fold_sample, s);
                    EXPECT_EQ(v.twirl, t);
                    EXPECT_EQ(v.observable, o);
                    EXPECT_EQ(v.factor_index, f);
                    EXPECT_EQ(v.lambda, job.noise_factors[f]);
                    EXPECT_EQ(v.shots, 100u);
                    EXPECT_EQ(v.seed, derive_seed(5, {kSampleTag, i}));
                    i++;
                }
            }
        }
    }
}

TEST(estimator, shots_per_factor_are_conserved) {
    EstimatorJob job = chain_job(2, 1, 5);
    job.fold_samples = 3;
    job.num_twirls = 7;
    job.total_shots_per_factor = 1000;
    std::map<std::pair<size_t, size_t>, uint64_t> totals;
    for (const auto &v : build_execution_plan(job)) {
        totals[{v.observable, v.factor_index}] += v.shots;
    }
    EXPECT_EQ(totals.size(), 6u);
    for (auto [k, total] : totals) {
        EXPECT_EQ(total, 1000u);
    }
}

TEST(estimator, validation) {
    EstimatorJob job = chain_job(2, 1, 5);
    EXPECT_NO_THROW(job.validate());
    auto bad = job;
    bad.noise_factors = {1, 1};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad.noise_factors = {0.5, 1};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = job;
    bad.observables = {PauliString("ZZZ")};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = job;
    bad.fold_samples = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = job;
    bad.num_twirls = 100;
    bad.total_shots_per_factor = 50;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = job;
    bad.observables.clear();
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(estimator, zero_noise_is_exact) {
    EstimatorJob job = chain_job(4, 3, 2);
    job.total_shots_per_factor = 0;
    job.num_twirls = 4;
    auto ideal = simulate(job.circuit, NoiseModel{});
    auto r = run_mitigated_estimator(job, NoiseModel{});
    for (size_t o = 0; o < job.observables.size(); o++) {
        double expected = exact_expectation(ideal, job.observables[o]);
        for (const auto &p : r.observables[o].points) {
            EXPECT_NEAR(p.mean, expected, 1e-10);
            EXPECT_EQ(p.std_error, 0);
        }
        EXPECT_NEAR(r.observables[o].chosen_value, expected, 1e-9);
    }
}

TEST(estimator, exact_points_match_direct_simulation) {
    EstimatorJob job = chain_job(4, 2, 3);
    job.total_shots_per_factor = 0;
    job.noise_factors = {1, 1.5, 3};
    NoiseModel noise = NoiseModel::depolarizing(0.02);
    auto r = run_mitigated_estimator(job, noise);
    for (size_t f = 0; f < 3; f++) {
        auto plan = plan_fold(job.circuit, job.noise_factors[f], job.scope, job.foldable,
                              derive_seed(derive_seed(3, {kFoldTag, f}), {0}));
        auto rho = simulate(apply_fold(job.circuit, plan), noise);
        for (size_t o = 0; o < job.observables.size(); o++) {
            EXPECT_NEAR(r.observables[o].points[f].mean, exact_expectation(rho, job.observables[o]), 1e-12);
            EXPECT_DOUBLE_EQ(r.observables[o].points[f].lambda_eff, plan.lambda_eff);
        }
    }
}

TEST(estimator, lambda_eff_is_realized_not_nominal) {
    EstimatorJob job;
    job.circuit = build_brickwork(4, 5, EntanglerKind::CZ);
    job.observables = {PauliString::z_all(4)};
    job.noise_factors = {1, 1.2, 1.3};
    job.total_shots_per_factor = 0;
    auto r = run_mitigated_estimator(job, NoiseModel::depolarizing(0.01));
    const auto &pts = r.observables[0].points;
    EXPECT_DOUBLE_EQ(pts[0].lambda_eff, 1);
    EXPECT_DOUBLE_EQ(pts[1].lambda_eff, 1.4);  // s = round(0.5) = 1
    EXPECT_DOUBLE_EQ(pts[2].lambda_eff, 1.4);  // s = round(0.75) = 1
    EXPECT_EQ(r.provenance["lambda_eff"][1], 1.4);
}

TEST(estimator, circuits_without_foldable_gates_keep_nominal_lambdas) {
    EstimatorJob job;
    job.circuit = Circuit(2, {Gate::x(0), Gate::u3(1, 0.4, 0, 0)});
    job.observables = {PauliString("ZZ")};
    job.total_shots_per_factor = 0;
    auto r = run_mitigated_estimator(job, NoiseModel::depolarizing(0.05));
    EXPECT_EQ(r.observables[0].points[2].lambda_eff, 5);
    EXPECT_NEAR(r.observables[0].chosen_value, -std::cos(0.4), 1e-12);
}

TEST(estimator, depolarizing_noise_is_twirl_invariant) {
    // Pauli frames commute with a depolarizing channel, so the twirled average
    // equals the untwirled value exactly.
    EstimatorJob job = chain_job(4, 2, 8);
    job.total_shots_per_factor = 0;
    NoiseModel noise = NoiseModel::depolarizing(0.03);
    auto plain = run_mitigated_estimator(job, noise);
    job.num_twirls = 5;
    auto twirled = run_mitigated_estimator(job, noise);
    for (size_t o = 0; o < job.observables.size(); o++) {
        for (size_t f = 0; f < 3; f++) {
            EXPECT_NEAR(plain.observables[o].points[f].mean, twirled.observables[o].points[f].mean, 1e-12);
        }
    }
}

TEST(estimator, exact_readout_handling) {
    EstimatorJob job = chain_job(4, 2, 9);
    job.total_shots_per_factor = 0;
    NoiseModel noise = NoiseModel::depolarizing(0.01);
    noise.set_uniform_readout(4, 0.05, 0.02);
    NoiseModel clean = NoiseModel::depolarizing(0.01);

    auto raw = run_mitigated_estimator(job, noise);
    job.readout_mitigation = true;
    auto mitigated = run_mitigated_estimator(job, noise);
    auto reference = run_mitigated_estimator(job, clean);
    auto rho = simulate(job.circuit, noise);
    for (size_t o = 0; o < job.observables.size(); o++) {
        EXPECT_NEAR(mitigated.observables[o].points[0].mean, reference.observables[o].points[0].mean, 1e-12);
        EXPECT_NEAR(
            raw.observables[o].points[0].mean,
            exact_expectation_with_readout(rho, job.observables[o], noise.readout), 1e-12);
    }
}

TEST(estimator, sampled_points_agree_with_exact) {
    EstimatorJob job = chain_job(4, 2, 10);
    job.fold_samples = 2;
    job.num_twirls = 3;
    job.total_shots_per_factor = 60000;
    NoiseModel noise = NoiseModel::depolarizing(0.02);
    auto sampled = run_mitigated_estimator(job, noise);
    job.total_shots_per_factor = 0;
    auto exact = run_mitigated_estimator(job, noise);
    for (size_t o = 0; o < job.observables.size(); o++) {
        for (size_t f = 0; f < 3; f++) {
            const auto &s = sampled.observables[o].points[f];
            EXPECT_EQ(s.shots, 60000u);
            EXPECT_GT(s.std_error, 0);
            EXPECT_NEAR(s.mean, exact.observables[o].points[f].mean, 5 * s.std_error);
        }
    }
}

TEST(estimator, deterministic_given_seed) {
    EstimatorJob job = chain_job(4, 3, 11);
    job.fold_samples = 2;
    job.num_twirls = 2;
    job.readout_mitigation = true;
    job.noise_factors = {1, 1.4, 2};
    job.total_shots_per_factor = 2000;
    NoiseModel noise = NoiseModel::depolarizing(0.02);
    noise.coherent_epsilon = 0.1;
    noise.set_uniform_readout(4, 0.02, 0.01);
    auto a = run_mitigated_estimator(job, noise);
    auto b = run_mitigated_estimator(job, noise);
    EXPECT_EQ(a.provenance.dump(), b.provenance.dump());
    for (size_t o = 0; o < 4; o++) {
        EXPECT_EQ(a.observables[o].chosen_value, b.observables[o].chosen_value);
    }
    job.seed = 12;
    auto c = run_mitigated_estimator(job, noise);
    EXPECT_NE(a.provenance.dump(), c.provenance.dump());
}

TEST(estimator, chosen_model_skips_flagged_fits) {
    EstimatorJob job;
    job.circuit = build_spin_chain(2, 1, 0, 0, 0, 1);
    job.observables = {PauliString("XI")};
    job.total_shots_per_factor = 0;
    job.models = {ExtrapolationModel::exponential(), ExtrapolationModel::linear()};
    // theta = 0 keeps every qubit in a Z eigenstate, so <X0> = 0 at every lambda.
    auto r = run_mitigated_estimator(job, NoiseModel::depolarizing(0.0));
    EXPECT_TRUE(r.observables[0].fits[0].flags.degenerate_fit);
    EXPECT_EQ(r.observables[0].chosen_model, "linear");

    job.models.clear();
    auto none = run_mitigated_estimator(job, NoiseModel{});
    EXPECT_TRUE(std::isnan(none.observables[0].chosen_value));
}

TEST(estimator, fit_errors_throw_or_are_recorded) {
    EstimatorJob job = chain_job(4, 1, 13);
    job.noise_factors = {1, 1.1, 1.2};  // 3 gates: every lambda rounds to zero folds
    job.total_shots_per_factor = 0;
    EXPECT_THROW(run_mitigated_estimator(job, NoiseModel::depolarizing(0.01)), FitError);
    job.tolerate_fit_errors = true;
    auto r = run_mitigated_estimator(job, NoiseModel::depolarizing(0.01));
    for (const auto &fit : r.observables[0].fits) {
        EXPECT_FALSE(fit.error.empty());
        EXPECT_TRUE(std::isnan(fit.zero_noise_value));
        EXPECT_TRUE(to_json(fit).contains("error"));
    }
    EXPECT_TRUE(std::isnan(r.observables[0].chosen_value));
}

TEST(estimator, rejects_non_native_circuits) {
    EstimatorJob job;
    job.circuit = Circuit(2);
    job.circuit.append(Gate::opaque("SWAP", {0, 1}));
    job.observables = {PauliString("ZZ")};
    EXPECT_THROW(run_mitigated_estimator(job, NoiseModel{}), std::invalid_argument);
}
