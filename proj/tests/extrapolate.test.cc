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

#include "dzne/extrapolate.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "gtest/gtest.h"

#include "dzne/rng.h"

using namespace dzne;

namespace {

std::vector<NoisePoint> points_of(
    const std::vector<double> &lambdas, const std::function<double(double)> &f, double sigma = 0) {
    std::vector<NoisePoint> out;
    for (double l : lambdas) {
        out.push_back({l, f(l), sigma, 1000});
    }
    return out;
}

/// Weighted least squares by the normal equations, returning (beta, cov).
std::pair<Eigen::VectorXd, Eigen::MatrixXd> normal_equations(const std::vector<NoisePoint> &pts, int degree) {
    Eigen::MatrixXd x(pts.size(), degree + 1);
    Eigen::VectorXd y(pts.size());
    Eigen::VectorXd w(pts.size());
    for (size_t i = 0; i < pts.size(); i++) {
        for (int k = 0; k <= degree; k++) {
            x(i, k) = std::pow(pts[i].lambda_eff, k);
        }
        y[i] = pts[i].mean;
        w[i] = 1 / (pts[i].std_error * pts[i].std_error);
    }
    Eigen::MatrixXd xtwx = x.transpose() * w.asDiagonal() * x;
    Eigen::MatrixXd cov = xtwx.inverse();
    Eigen::VectorXd beta = cov * x.transpose() * w.asDiagonal() * y;
    return {beta, cov};
}

/// Weighted rss of the best S + A exp(-g lambda) for fixed g.
double exp_profile_rss(const std::vector<NoisePoint> &pts, double g) {
    Eigen::MatrixXd x(pts.size(), 2);
    Eigen::VectorXd y(pts.size());
    for (size_t i = 0; i < pts.size(); i++) {
        double w = pts[i].std_error > 0 ? 1 / pts[i].std_error : 1;
        x(i, 0) = w;
        x(i, 1) = w * std::exp(-g * pts[i].lambda_eff);
        y[i] = w * pts[i].mean;
    }
    Eigen::VectorXd b = x.colPivHouseholderQr().solve(y);
    return (x * b - y).squaredNorm();
}

}  // namespace

TEST(extrapolate, model_names) {
    for (auto m : {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::poly(4),
                   ExtrapolationModel::exponential(), ExtrapolationModel::exponential(0.0),
                   ExtrapolationModel::exponential(0.25)}) {
        EXPECT_EQ(ExtrapolationModel::parse(m.name()), m) << m.name();
    }
    EXPECT_EQ(ExtrapolationModel::linear().name(), "linear");
    EXPECT_EQ(ExtrapolationModel::poly(2).name(), "poly2");
    EXPECT_EQ(ExtrapolationModel::parse("L"), ExtrapolationModel::linear());
    EXPECT_EQ(ExtrapolationModel::parse("Q"), ExtrapolationModel::poly(2));
    EXPECT_EQ(ExtrapolationModel::parse("E"), ExtrapolationModel::exponential());
    EXPECT_THROW(ExtrapolationModel::parse("cubic"), std::invalid_argument);
    EXPECT_THROW(ExtrapolationModel::parse("poly0"), std::invalid_argument);
}

TEST(extrapolate, linear_example) {
    auto pts = points_of({1, 3, 5}, [](double l) { return 1 - 0.1 * l; });
    auto fit = fit_linear(pts);
    EXPECT_NEAR(fit.zero_noise_value, 1, 1e-12);
    EXPECT_NEAR(fit.params[1], -0.1, 1e-12);
    EXPECT_NEAR(fit.zero_noise_std_error, 0, 1e-12);
    EXPECT_NEAR(fit.rss, 0, 1e-20);
    EXPECT_FALSE(fit.flags.any());
    EXPECT_NEAR(fit.evaluate(2), 0.8, 1e-12);
}

TEST(extrapolate, two_point_linear_is_richardson) {
    // Two points with zero errors: the intercept is (l2 y1 - l1 y2) / (l2 - l1).
    std::vector<NoisePoint> pts = {{1, 0.8, 0, 1}, {3, 0.5, 0, 1}};
    auto fit = fit_linear(pts);
    EXPECT_NEAR(fit.zero_noise_value, (3 * 0.8 - 1 * 0.5) / 2, 1e-12);
    EXPECT_EQ(fit.zero_noise_std_error, 0);
}

TEST(extrapolate, weighted_fits_match_normal_equations) {
    Rng rng(1);
    for (int k = 0; k < 50; k++) {
        std::vector<NoisePoint> pts;
        const size_t n = 4 + rng.below(4);
        for (size_t i = 0; i < n; i++) {
            pts.push_back({1 + 0.5 * static_cast<double>(i), rng.uniform(-1, 1), rng.uniform(0.01, 0.1), 100});
        }
        for (int degree : {1, 2, 3}) {
            auto fit = degree == 1 ? fit_linear(pts) : fit_poly(pts, degree);
            auto [beta, cov] = normal_equations(pts, degree);
            ASSERT_EQ(fit.params.size(), static_cast<size_t>(degree + 1));
            for (int j = 0; j <= degree; j++) {
                EXPECT_NEAR(fit.params[j], beta[j], 1e-8 * (1 + std::abs(beta[j])));
            }
            EXPECT_NEAR(fit.zero_noise_value, beta[0], 1e-8 * (1 + std::abs(beta[0])));
            EXPECT_NEAR(fit.zero_noise_std_error, std::sqrt(cov(0, 0)), 1e-7 * std::sqrt(cov(0, 0)));
        }
    }
}

TEST(extrapolate, poly_interpolates_exactly) {
    auto pts = points_of({1, 3, 5}, [](double l) { return 1 - 0.1 * l + 0.01 * l * l; });
    auto fit = fit_poly(pts, 2);
    EXPECT_NEAR(fit.zero_noise_value, 1, 1e-12);
    EXPECT_NEAR(fit.params[2], 0.01, 1e-12);
    EXPECT_EQ(fit.zero_noise_std_error, 0);
    EXPECT_THROW(fit_poly(pts, 3), FitError);
}

TEST(extrapolate, exponential_recovers_forward_model) {
    for (double s : {0.0, 0.1, -0.2}) {
        for (double l : {0.5, 2.0, 8.0}) {
            auto f = [&](double x) { return s + 0.8 * std::exp(-x / l); };
            auto pts = points_of({1, 2, 3, 4, 5}, f);
            auto fit = fit_exponential(pts);
            EXPECT_NEAR(fit.zero_noise_value, s + 0.8, 1e-6) << s << " " << l;
            EXPECT_NEAR(fit.params[0], s, 1e-5);
            EXPECT_NEAR(fit.params[2], l, 1e-4 * l);
            EXPECT_FALSE(fit.flags.degenerate_fit);

            auto fixed = fit_exponential(pts, s);
            EXPECT_NEAR(fixed.zero_noise_value, s + 0.8, 1e-6);
            EXPECT_EQ(fixed.params[0], s);
        }
    }
}

TEST(extrapolate, exponential_matches_dense_profile_search) {
    Rng rng(2);
    for (int k = 0; k < 20; k++) {
        std::vector<NoisePoint> pts;
        for (double l : {1.0, 1.5, 2.0, 3.0, 5.0}) {
            pts.push_back({l, 0.9 * std::exp(-l / 2.5) + rng.uniform(-0.01, 0.01), 0.01, 1000});
        }
        auto fit = fit_exponential(pts);
        double best = INFINITY;
        for (int i = 0; i <= 20000; i++) {
            best = std::min(best, exp_profile_rss(pts, std::pow(10.0, -3 + 4.0 * i / 20000)));
        }
        EXPECT_LE(fit.rss, best * (1 + 1e-9) + 1e-12);
        EXPECT_NEAR(fit.rss, exp_profile_rss(pts, 1 / fit.params[2]), 1e-9 * (1 + fit.rss));
    }
}

TEST(extrapolate, invariances) {
    Rng rng(3);
    for (int k = 0; k < 20; k++) {
        std::vector<NoisePoint> pts;
        for (double l : {1.0, 2.0, 3.0, 4.0, 5.0}) {
            pts.push_back({l, 0.7 * std::exp(-l / 3) + rng.uniform(-0.02, 0.02), 0.02, 1000});
        }
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(k));
        auto scaled = pts;
        auto shifted = pts;
        for (size_t i = 0; i < pts.size(); i++) {
            scaled[i].mean *= 2;
            scaled[i].std_error *= 2;
            shifted[i].mean += 0.1;
        }
        for (auto model : {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::exponential()}) {
            auto base = fit_model(pts, model);
            EXPECT_NEAR(fit_model(shuffled, model).zero_noise_value, base.zero_noise_value, 1e-8);
            EXPECT_NEAR(fit_model(scaled, model).zero_noise_value, 2 * base.zero_noise_value, 1e-7);
            EXPECT_NEAR(fit_model(scaled, model).zero_noise_std_error, 2 * base.zero_noise_std_error, 1e-6);
            EXPECT_NEAR(fit_model(shifted, model).zero_noise_value, base.zero_noise_value + 0.1, 1e-7);
            EXPECT_NEAR(fit_model(scaled, model).rss, base.rss, 1e-8 * (1 + base.rss));
        }
    }
}

TEST(extrapolate, linear_std_error_is_calibrated) {
    // z-scores of the intercept over many noisy draws have unit spread.
    std::mt19937_64 eng(4);
    std::normal_distribution<double> normal(0, 1);
    const double sigma = 0.01;
    double sum = 0, sum2 = 0;
    const int reps = 4000;
    for (int r = 0; r < reps; r++) {
        auto pts = points_of({1, 3, 5}, [&](double l) { return 0.9 - 0.1 * l + sigma * normal(eng); }, sigma);
        auto fit = fit_linear(pts);
        double z = (fit.zero_noise_value - 0.9) / fit.zero_noise_std_error;
        sum += z;
        sum2 += z * z;
    }
    double mean = sum / reps;
    EXPECT_NEAR(mean, 0, 0.1);
    EXPECT_NEAR(std::sqrt(sum2 / reps - mean * mean), 1, 0.05);
}

TEST(extrapolate, saturated_signal_is_flagged) {
    auto pts = points_of({1, 3, 5}, [](double) { return 0.0; }, 0.01);
    pts[1].mean = 0.005;
    for (auto model : {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::exponential()}) {
        auto fit = fit_model(pts, model);
        EXPECT_TRUE(fit.flags.lambda_independent) << model.name();
    }
    EXPECT_TRUE(fit_exponential(pts).flags.degenerate_fit);

    auto flat = points_of({1, 3, 5}, [](double) { return 0.3; });
    EXPECT_TRUE(fit_linear(flat).flags.lambda_independent);
    EXPECT_TRUE(fit_exponential(flat).flags.degenerate_fit);
}

TEST(extrapolate, out_of_range_is_flagged) {
    auto pts = points_of({1, 2, 3}, [](double l) { return 1.3 - 0.4 * l; }, 0.001);
    auto fit = fit_linear(pts);
    EXPECT_NEAR(fit.zero_noise_value, 1.3, 1e-9);
    EXPECT_TRUE(fit.flags.out_of_range);
    EXPECT_FALSE(fit.flags.lambda_independent);
    EXPECT_EQ(fit.flags.names(), std::vector<std::string>{"out_of_range"});

    auto wide = points_of({1, 2, 3}, [](double l) { return 1.3 - 0.4 * l; }, 0.2);
    EXPECT_FALSE(fit_linear(wide).flags.out_of_range);
}

TEST(extrapolate, bad_inputs_throw_fit_error) {
    auto one = points_of({1, 1, 1}, [](double) { return 0.5; });
    EXPECT_THROW(fit_linear(one), FitError);
    EXPECT_THROW(fit_exponential(one), FitError);
    auto two = points_of({1, 3}, [](double l) { return l; });
    EXPECT_THROW(fit_exponential(two), FitError);
    EXPECT_THROW(fit_poly(two, 2), FitError);
    auto nan = points_of({1, 3, 5}, [](double) { return NAN; });
    EXPECT_THROW(fit_linear(nan), FitError);
    auto neg = points_of({1, 3, 5}, [](double) { return 0.1; }, -1);
    EXPECT_THROW(fit_linear(neg), FitError);
    EXPECT_THROW(fit_exponential(points_of({1, 2, 3}, [](double l) { return l; }), INFINITY), FitError);
}

TEST(extrapolate, fit_json) {
    auto fit = fit_linear(points_of({1, 3, 5}, [](double l) { return 1 - 0.1 * l; }));
    auto j = to_json(fit);
    EXPECT_EQ(j["model"], "linear");
    EXPECT_EQ(j["params"].size(), 2u);
    EXPECT_TRUE(j.contains("zero_noise_stderr"));
    EXPECT_TRUE(j["flags"].empty());
}

TEST(extrapolate, select_model_rule) {
    std::vector<ModelCandidate> c = {{ModelChoice::L, 0.05}, {ModelChoice::Q, 0.0495}, {ModelChoice::E, 0.03}};
    EXPECT_EQ(select_model(c, 0.1), ModelChoice::E);
    EXPECT_EQ(select_model(c, 0.5), ModelChoice::NF);
    EXPECT_EQ(select_model(c, 0.4), ModelChoice::E);

    std::vector<ModelCandidate> close = {{ModelChoice::L, 0.05}, {ModelChoice::Q, 0.0495}, {ModelChoice::E, 0.0492}};
    EXPECT_EQ(select_model(close, 0.1), ModelChoice::L);

    std::vector<ModelCandidate> quad = {{ModelChoice::L, 0.05}, {ModelChoice::Q, 0.01}, {ModelChoice::E, 0.0095}};
    EXPECT_EQ(select_model(quad, 0.1), ModelChoice::Q);

    std::vector<ModelCandidate> nan = {{ModelChoice::L, 0.05}, {ModelChoice::Q, NAN}, {ModelChoice::E, 0.01}};
    EXPECT_EQ(select_model(nan, 0.1), ModelChoice::E);

    std::vector<ModelCandidate> first_nan = {{ModelChoice::L, NAN}, {ModelChoice::Q, 0.02}, {ModelChoice::E, 0.0195}};
    EXPECT_EQ(select_model(first_nan, 0.1), ModelChoice::Q);
    std::vector<ModelCandidate> all_nan = {{ModelChoice::L, NAN}};
    EXPECT_EQ(select_model(all_nan, 0.1), ModelChoice::NF);

    EXPECT_EQ(to_string(ModelChoice::NF), "NF");
    EXPECT_THROW(select_model(std::span<const ModelCandidate>{}, 0.1), std::invalid_argument);
}
