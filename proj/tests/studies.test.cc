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

#include "dzne/studies.h"

#include <sstream>

#include "gtest/gtest.h"

using namespace dzne;

namespace {

template <typename F>
std::string csv(F write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

std::string first_line(const std::string &s) {
    return s.substr(0, s.find('\n'));
}

}  // namespace

TEST(studies, log_spaced) {
    auto v = log_spaced(0.001, 0.04, 8);
    ASSERT_EQ(v.size(), 8u);
    EXPECT_DOUBLE_EQ(v.front(), 0.001);
    EXPECT_NEAR(v.back(), 0.04, 1e-15);
    for (size_t i = 1; i < v.size(); i++) {
        EXPECT_NEAR(v[i] / v[i - 1], std::pow(40.0, 1.0 / 7), 1e-12);
    }
    EXPECT_EQ(log_spaced(0.5, 0.5, 1), std::vector<double>{0.5});
    EXPECT_THROW(log_spaced(0, 1, 3), std::invalid_argument);
}

TEST(studies, calibration_defaults) {
    auto c = CalibrationConfig::defaults();
    EXPECT_EQ(c.depths.size(), 21u);
    EXPECT_EQ(c.depths.back(), 40u);
    EXPECT_EQ(c.error_probs.size(), 8u);
    EXPECT_EQ(BenchmarkConfig::defaults().steps.size(), 35u);
}

TEST(studies, calibration_small) {
    CalibrationConfig c;
    c.n = 4;
    c.depths = {0, 4};
    c.error_probs = {0.005, 0.02};
    c.shots = 2000;
    c.repetitions = 3;
    c.seed = 3;
    auto cells = run_calibration_sweep(c);
    ASSERT_EQ(cells.size(), 4u);
    for (const auto &cell : cells) {
        EXPECT_GE(cell.rmse_L, 0);
        EXPECT_EQ(cell.best_abs_error, std::min({cell.rmse_L, cell.rmse_Q, cell.rmse_E}));
        if (cell.depth == 0) {
            // No foldable gates: every model reproduces the unamplified point.
            EXPECT_EQ(cell.label, ModelChoice::L);
        }
    }
    auto text = csv([&](std::ostream &o) { write_calibration_csv(o, cells); });
    EXPECT_EQ(first_line(text), "depth,error_prob,rmse_L,rmse_Q,rmse_E,best_abs_error,label");
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_calibration_csv(o, run_calibration_sweep(c)); }));

    c.depths = {0};
    c.shots = 0;
    for (const auto &cell : run_calibration_sweep(c)) {
        EXPECT_EQ(cell.label, ModelChoice::L);
        EXPECT_NEAR(cell.best_abs_error, 0, 1e-12);
    }
    c.depths = {3};
    EXPECT_THROW(run_calibration_sweep(c), std::invalid_argument);
}

TEST(studies, partial_fold_small) {
    PartialFoldConfig c;
    c.n = 4;
    c.total_2q = {10};
    c.sample_counts = {1, 3};
    c.repetitions = 6;
    c.shots = 1000;
    c.seed = 4;
    auto rows = run_partial_fold_study(c);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].num_samples, 3u);
    EXPECT_EQ(rows[0].values.size(), 6u);
    auto text = csv([&](std::ostream &o) { write_partial_fold_csv(o, rows); });
    EXPECT_EQ(first_line(text), "total_2q,num_samples,repetitions,mean_zne,std_zne");
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_partial_fold_csv(o, run_partial_fold_study(c)); }));
}

TEST(studies, shot_scaling_small) {
    ShotScalingConfig c;
    c.n = 4;
    c.steps = 2;
    c.error_probs = {0.01};
    c.shots = {500, 5000};
    c.repetitions = 20;
    c.seed = 5;
    auto r = run_shot_scaling_study(c);
    ASSERT_EQ(r.rows.size(), 2u);
    ASSERT_EQ(r.fits.size(), 1u);
    EXPECT_GT(r.rows[0].sigma, r.rows[1].sigma);
    EXPECT_GT(r.fits[0].exponent, 0.2);
    EXPECT_LT(r.fits[0].exponent, 0.8);
    auto text = csv([&](std::ostream &o) { write_shot_scaling_csv(o, r); });
    EXPECT_EQ(first_line(text), "error_prob,shots,mean_zne,sigma,fit_a,fit_exponent");
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_shot_scaling_csv(o, run_shot_scaling_study(c)); }));

    c.shots = {0};
    auto exact = run_shot_scaling_study(c);
    EXPECT_NEAR(exact.rows[0].sigma, 0, 1e-12);
}

TEST(studies, readout_small) {
    ReadoutStudyConfig c;
    c.n = 4;
    c.steps = {1, 2};
    c.repetitions = 2;
    c.shots = 4000;
    c.seed = 6;
    auto rows = run_readout_study(c);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_DOUBLE_EQ(rows[0].gap(), rows[0].err_zne - rows[0].err_zne_ro);
    auto text = csv([&](std::ostream &o) { write_readout_csv(o, rows); });
    EXPECT_EQ(first_line(text), "steps,depth_2q,err_unmitigated,err_zne,err_zne_ro,gap");
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_readout_csv(o, run_readout_study(c)); }));
}

TEST(studies, twirl_small) {
    TwirlStudyConfig c;
    c.n = 4;
    c.steps = {1, 2};
    c.twirl_counts = {0, 4};
    c.repetitions = 2;
    c.shots = 2000;
    c.seed = 7;
    auto rows = run_twirl_study(c);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[2].steps, 0u);
    auto text = csv([&](std::ostream &o) { write_twirl_csv(o, rows); });
    EXPECT_EQ(first_line(text), "num_twirls,steps,rmse");
    EXPECT_NE(text.find(",all,"), std::string::npos);
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_twirl_csv(o, run_twirl_study(c)); }));
}

TEST(studies, benchmark_small) {
    BenchmarkConfig c;
    c.n = 4;
    c.steps = {1, 3};
    c.shots = 2048;
    c.num_twirls = 4;
    c.seed = 8;
    auto rows = run_benchmark(c);
    // Per depth: no-mit, then RO+RC and three fits for each of two noise sets.
    ASSERT_EQ(rows.size(), 2u * 9);
    EXPECT_EQ(rows[0].strategy, "no-mit");
    EXPECT_EQ(rows[0].noise_set, "none");
    EXPECT_EQ(rows[0].depth_2q, 2u);
    for (const auto &r : rows) {
        if (std::isnan(r.eps_avg)) {
            // Small lambdas on few gates round to repeated lambda_eff values.
            EXPECT_EQ(r.noise_set, "1|1.1|1.2");
            EXPECT_NE(r.strategy, "RO+RC");
            continue;
        }
        EXPECT_GE(r.eps_avg, 0) << r.depth_2q << r.noise_set << r.strategy;
        EXPECT_GE(r.eps_avg_stderr, 0);
    }
    auto text = csv([&](std::ostream &o) { write_benchmark_csv(o, rows); });
    EXPECT_EQ(first_line(text), "depth_2q,noise_set,strategy,eps_avg,eps_avg_stderr");
    EXPECT_EQ(text, csv([&](std::ostream &o) { write_benchmark_csv(o, run_benchmark(c)); }));
    EXPECT_EQ(noise_set_label({1, 1.1, 1.2}), "1|1.1|1.2");
}
