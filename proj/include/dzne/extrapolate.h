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

#ifndef DZNE_EXTRAPOLATE_H
#define DZNE_EXTRAPOLATE_H

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dzne {

/// One measured point of an expectation value versus noise factor.
struct NoisePoint {
    double lambda_eff = 1;
    double mean = 0;
    double std_error = 0;
    uint64_t shots = 0;
};

/// Raised when a fit cannot be computed from the given points.
class FitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { Linear, Poly, Exponential };

struct ExtrapolationModel {
    ModelKind kind = ModelKind::Linear;
    int degree = 1;
    /// Exponential only: hold S at this value and fit A and L.
    std::optional<double> fixed_shift;

    static ExtrapolationModel linear() {
        return {};
    }
    static ExtrapolationModel poly(int degree) {
        return {ModelKind::Poly, degree, std::nullopt};
    }
    static ExtrapolationModel exponential(std::optional<double> fixed_shift = std::nullopt) {
        return {ModelKind::Exponential, 0, fixed_shift};
    }
    /// `linear`, `poly<d>`, `exp`, or `exp@<shift>`.
    std::string name() const;
    /// Inverse of name(); also accepts the short labels L, Q (poly2) and E.
    static ExtrapolationModel parse(std::string_view text);
    bool operator==(const ExtrapolationModel &) const = default;
};

struct FitFlags {
    bool lambda_independent = false;
    bool out_of_range = false;
    bool degenerate_fit = false;

    bool any() const {
        return lambda_independent || out_of_range || degenerate_fit;
    }
    std::vector<std::string> names() const;
    bool operator==(const FitFlags &) const = default;
};

/// Result of fitting one model.
///
/// params: ascending-power coefficients for linear/poly, (S, A, L) for the
/// exponential S + A exp(-lambda / L).
struct ExtrapolationFit {
    ExtrapolationModel model;
    std::vector<double> params;
    double zero_noise_value = 0;
    double zero_noise_std_error = 0;
    /// Weighted residual sum of squares at the optimum.
    double rss = 0;
    FitFlags flags;
    /// Set instead of throwing when the caller asked to tolerate fit errors;
    /// the numeric fields are then NaN.
    std::string error;

    double evaluate(double lambda) const;
};

nlohmann::json to_json(const ExtrapolationFit &fit);

/// Weighted least squares line. Weights are 1/std_error^2, or all 1 if any
/// std_error is 0; in the latter case the covariance is scaled by rss/(N-2).
ExtrapolationFit fit_linear(std::span<const NoisePoint> points);

/// Weighted polynomial least squares solved by Householder QR.
ExtrapolationFit fit_poly(std::span<const NoisePoint> points, int degree);

/// S + A exp(-lambda / L) by variable projection over gamma = 1/L.
///
/// A 60-point log grid on [1e-3, 10] is followed by golden-section refinement
/// in log gamma. degenerate_fit is set when the residual surface carries no
/// information about gamma: it is flat to 1e-10 relative, its weighted range is
/// below the chi-square(1) 95% point, or the optimum sits on the grid edge.
ExtrapolationFit fit_exponential(std::span<const NoisePoint> points, std::optional<double> fixed_shift = std::nullopt);

ExtrapolationFit fit_model(std::span<const NoisePoint> points, const ExtrapolationModel &model);

/// lambda_independent: chi-square of the best constant fit below the 95%
/// quantile for N-1 degrees of freedom (with zero errors: all means equal).
/// out_of_range: |zero_noise_value| > 1 + 3 zero_noise_std_error.
/// degenerate_fit is passed through from the fit.
FitFlags stability_diagnostics(std::span<const NoisePoint> points, const ExtrapolationFit &fit);

enum class ModelChoice { L, Q, E, NF };
std::string to_string(ModelChoice c);

struct ModelCandidate {
    ModelChoice model;
    double rmse;
};

/// Calibration rule: NF if best_abs_error > nf_threshold, otherwise start at the
/// first candidate and move to a later one only when it lowers the RMSE of the
/// current choice by more than preference_threshold. Candidates with NaN RMSE
/// (failed fits) are skipped; NF if none remain.
ModelChoice select_model(
    std::span<const ModelCandidate> candidates,
    double best_abs_error,
    double preference_threshold = 0.001,
    double nf_threshold = 0.4);

}  // namespace dzne

#endif  // DZNE_EXTRAPOLATE_H
