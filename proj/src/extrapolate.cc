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
#include <limits>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "dzne/text_util.h"

namespace dzne {

namespace {

constexpr size_t kGridSize = 60;
constexpr double kGammaMin = 1e-3;
constexpr double kGammaMax = 10;

void check_points(std::span<const NoisePoint> points, size_t min_distinct, const char *what) {
    std::vector<double> lambdas;
    for (const auto &p : points) {
        if (!std::isfinite(p.lambda_eff) || !std::isfinite(p.mean) || !std::isfinite(p.std_error) || p.std_error < 0) {
            throw FitError(std::string(what) + ": non-finite or negative input");
        }
        lambdas.push_back(p.lambda_eff);
    }
    std::sort(lambdas.begin(), lambdas.end());
    size_t distinct = std::unique(lambdas.begin(), lambdas.end()) - lambdas.begin();
    if (distinct < min_distinct) {
        throw FitError(
            std::string(what) + ": needs at least " + std::to_string(min_distinct) + " distinct noise factors, got " +
            std::to_string(distinct));
    }
}

/// True when every point carries a positive standard error.
bool statistical_weights(std::span<const NoisePoint> points) {
    return std::all_of(points.begin(), points.end(), [](const NoisePoint &p) {
        return p.std_error > 0;
    });
}

std::vector<double> weights(std::span<const NoisePoint> points) {
    const bool stat = statistical_weights(points);
    std::vector<double> w;
    w.reserve(points.size());
    for (const auto &p : points) {
        w.push_back(stat ? 1 / (p.std_error * p.std_error) : 1.0);
    }
    return w;
}

/// Factor applied to the inverse normal matrix to get parameter covariances.
double covariance_scale(bool stat, double rss, size_t n, size_t p) {
    if (stat) {
        return 1;
    }
    return n > p ? rss / static_cast<double>(n - p) : 0;
}

struct Projection {
    double rss;
    double shift;
    double amplitude;
};

class ExponentialProblem {
   public:
    ExponentialProblem(std::span<const NoisePoint> points, std::optional<double> fixed_shift)
        : points_(points), w_(weights(points)), fixed_shift_(fixed_shift) {
    }

    Projection project(double gamma) const {
        const size_t n = points_.size();
        std::vector<double> e(n);
        for (size_t i = 0; i < n; i++) {
            e[i] = std::exp(-gamma * points_[i].lambda_eff);
        }
        double shift;
        double amp;
        if (fixed_shift_) {
            shift = *fixed_shift_;
            double num = 0, den = 0;
            for (size_t i = 0; i < n; i++) {
                num += w_[i] * e[i] * (points_[i].mean - shift);
                den += w_[i] * e[i] * e[i];
            }
            amp = den > 0 ? num / den : 0;
        } else {
            double sw = 0, se = 0, sy = 0;
            for (size_t i = 0; i < n; i++) {
                sw += w_[i];
                se += w_[i] * e[i];
                sy += w_[i] * points_[i].mean;
            }
            const double ebar = se / sw, ybar = sy / sw;
            double see = 0, sey = 0;
            for (size_t i = 0; i < n; i++) {
                see += w_[i] * (e[i] - ebar) * (e[i] - ebar);
                sey += w_[i] * (e[i] - ebar) * (points_[i].mean - ybar);
            }
            amp = see > 1e-300 ? sey / see : 0;
            shift = ybar - amp * ebar;
        }
        double rss = 0;
        for (size_t i = 0; i < n; i++) {
            double r = points_[i].mean - shift - amp * e[i];
            rss += w_[i] * r * r;
        }
        return {rss, shift, amp};
    }

    std::span<const NoisePoint> points_;
    std::vector<double> w_;
    std::optional<double> fixed_shift_;
};

}  // namespace

std::string ExtrapolationModel::name() const {
    switch (kind) {
        case ModelKind::Linear:
            return "linear";
        case ModelKind::Poly:
            return "poly" + std::to_string(degree);
        case ModelKind::Exponential:
            return fixed_shift ? "exp@" + format_double(*fixed_shift) : "exp";
    }
    return "?";
}

ExtrapolationModel ExtrapolationModel::parse(std::string_view text) {
    if (text == "linear" || text == "L") {
        return linear();
    }
    if (text == "Q") {
        return poly(2);
    }
    if (text == "exp" || text == "E") {
        return exponential();
    }
    if (text.starts_with("exp@")) {
        return exponential(parse_double(text.substr(4)));
    }
    if (text.starts_with("poly") && text.size() > 4) {
        int d = 0;
        for (char c : text.substr(4)) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("bad model name '" + std::string(text) + "'");
            }
            d = d * 10 + (c - '0');
        }
        if (d < 1 || d > 10) {
            throw std::invalid_argument("polynomial degree must be between 1 and 10");
        }
        return poly(d);
    }
    throw std::invalid_argument("unknown extrapolation model '" + std::string(text) + "'");
}

std::vector<std::string> FitFlags::names() const {
    std::vector<std::string> out;
    if (lambda_independent) {
        out.push_back("lambda_independent");
    }
    if (out_of_range) {
        out.push_back("out_of_range");
    }
    if (degenerate_fit) {
        out.push_back("degenerate_fit");
    }
    return out;
}

double ExtrapolationFit::evaluate(double lambda) const {
    if (model.kind == ModelKind::Exponential) {
        return params[0] + params[1] * std::exp(-lambda / params[2]);
    }
    double v = 0;
    for (size_t k = params.size(); k-- > 0;) {
        v = v * lambda + params[k];
    }
    return v;
}

nlohmann::json to_json(const ExtrapolationFit &fit) {
    nlohmann::json j = {
        {"model", fit.model.name()},
        {"params", fit.params},
        {"zero_noise_value", fit.zero_noise_value},
        {"zero_noise_stderr", fit.zero_noise_std_error},
        {"rss", fit.rss},
        {"flags", fit.flags.names()},
    };
    if (!fit.error.empty()) {
        j["error"] = fit.error;
    }
    return j;
}

ExtrapolationFit fit_linear(std::span<const NoisePoint> points) {
    check_points(points, 2, "linear fit");
    const auto w = weights(points);
    const bool stat = statistical_weights(points);
    double sw = 0, sx = 0, sy = 0;
    for (size_t i = 0; i < points.size(); i++) {
        sw += w[i];
        sx += w[i] * points[i].lambda_eff;
        sy += w[i] * points[i].mean;
    }
    const double xbar = sx / sw, ybar = sy / sw;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < points.size(); i++) {
        const double dx = points[i].lambda_eff - xbar;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (points[i].mean - ybar);
    }
    const double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;

    ExtrapolationFit fit;
    fit.model = ExtrapolationModel::linear();
    fit.params = {intercept, slope};
    for (size_t i = 0; i < points.size(); i++) {
        double r = points[i].mean - intercept - slope * points[i].lambda_eff;
        fit.rss += w[i] * r * r;
    }
    const double scale = covariance_scale(stat, fit.rss, points.size(), 2);
    fit.zero_noise_value = intercept;
    fit.zero_noise_std_error = std::sqrt(scale * (1 / sw + xbar * xbar / sxx));
    fit.flags = stability_diagnostics(points, fit);
    return fit;
}

ExtrapolationFit fit_poly(std::span<const NoisePoint> points, int degree) {
    if (degree < 0) {
        throw std::invalid_argument("polynomial degree must be non-negative");
    }
    const size_t p = static_cast<size_t>(degree) + 1;
    check_points(points, p, "polynomial fit");
    const auto w = weights(points);
    const bool stat = statistical_weights(points);
    const size_t n = points.size();
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (size_t i = 0; i < n; i++) {
        const double sw = std::sqrt(w[i]);
        double v = sw;
        for (size_t k = 0; k < p; k++) {
            x(i, k) = v;
            v *= points[i].lambda_eff;
        }
        y(i) = sw * points[i].mean;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::VectorXd coef = qr.solve(y);
    Eigen::MatrixXd r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));

    ExtrapolationFit fit;
    fit.model = ExtrapolationModel::poly(degree);
    fit.params.assign(coef.data(), coef.data() + p);
    fit.rss = (x * coef - y).squaredNorm();
    const double scale = covariance_scale(stat, fit.rss, n, p);
    fit.zero_noise_value = coef(0);
    fit.zero_noise_std_error = std::sqrt(scale * rinv.row(0).squaredNorm());
    fit.flags = stability_diagnostics(points, fit);
    return fit;
}

ExtrapolationFit fit_exponential(std::span<const NoisePoint> points, std::optional<double> fixed_shift) {
    const size_t p = fixed_shift ? 2 : 3;
    check_points(points, p, "exponential fit");
    if (fixed_shift && !std::isfinite(*fixed_shift)) {
        throw FitError("exponential fit: non-finite fixed shift");
    }
    ExponentialProblem prob(points, fixed_shift);
    const bool stat = statistical_weights(points);

    // Grid search in u = log(gamma).
    const double u_lo = std::log(kGammaMin), u_hi = std::log(kGammaMax);
    std::vector<double> grid_u(kGridSize), grid_rss(kGridSize);
    size_t best = 0;
    for (size_t k = 0; k < kGridSize; k++) {
        grid_u[k] = u_lo + (u_hi - u_lo) * static_cast<double>(k) / (kGridSize - 1);
        grid_rss[k] = prob.project(std::exp(grid_u[k])).rss;
        if (grid_rss[k] < grid_rss[best]) {
            best = k;
        }
    }
    const auto [min_it, max_it] = std::minmax_element(grid_rss.begin(), grid_rss.end());
    const double rss_min = *min_it, rss_max = *max_it;

    // Golden-section refinement on the bracket around the best grid point.
    double a = grid_u[best == 0 ? 0 : best - 1];
    double b = grid_u[best + 1 == kGridSize ? best : best + 1];
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = prob.project(std::exp(c)).rss, fd = prob.project(std::exp(d)).rss;
    for (int it = 0; it < 300 && b - a > 1e-12 * std::max(1.0, std::abs(a)); it++) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = prob.project(std::exp(c)).rss;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = prob.project(std::exp(d)).rss;
        }
    }
    double u_star = (a + b) / 2;
    Projection proj = prob.project(std::exp(u_star));
    if (grid_rss[best] < proj.rss) {
        u_star = grid_u[best];
        proj = prob.project(std::exp(u_star));
    }
    const double gamma = std::exp(u_star);

    ExtrapolationFit fit;
    fit.model = ExtrapolationModel::exponential(fixed_shift);
    fit.params = {proj.shift, proj.amplitude, 1 / gamma};
    fit.rss = proj.rss;
    fit.zero_noise_value = proj.shift + proj.amplitude;

    // Delta method at the optimum.
    const size_t n = points.size();
    Eigen::MatrixXd jac(n, p);
    for (size_t i = 0; i < n; i++) {
        const double sw = std::sqrt(prob.w_[i]);
        const double lam = points[i].lambda_eff;
        const double e = std::exp(-gamma * lam);
        size_t col = 0;
        if (!fixed_shift) {
            jac(i, col++) = sw;
        }
        jac(i, col++) = sw * e;
        jac(i, col) = -sw * proj.amplitude * lam * e;
    }
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::MatrixXd cov = normal.completeOrthogonalDecomposition().pseudoInverse();
    cov *= covariance_scale(stat, fit.rss, n, p);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(p);
    g(0) = 1;
    if (!fixed_shift) {
        g(1) = 1;
    }
    fit.zero_noise_std_error = std::sqrt(std::max(0.0, g.dot(cov * g)));

    bool flat = rss_max <= 0 || (rss_max - rss_min) < 1e-10 * rss_max;
    bool uninformative = stat && (rss_max - rss_min) < boost::math::quantile(boost::math::chi_squared(1), 0.95);
    bool on_edge = best == 0 || best + 1 == kGridSize;
    fit.flags.degenerate_fit = flat || uninformative || on_edge;
    FitFlags diag = stability_diagnostics(points, fit);
    fit.flags.lambda_independent = diag.lambda_independent;
    fit.flags.out_of_range = diag.out_of_range;
    return fit;
}

ExtrapolationFit fit_model(std::span<const NoisePoint> points, const ExtrapolationModel &model) {
    switch (model.kind) {
        case ModelKind::Linear:
            return fit_linear(points);
        case ModelKind::Poly:
            return fit_poly(points, model.degree);
        case ModelKind::Exponential:
            return fit_exponential(points, model.fixed_shift);
    }
    throw std::invalid_argument("unknown model kind");
}

FitFlags stability_diagnostics(std::span<const NoisePoint> points, const ExtrapolationFit &fit) {
    FitFlags flags;
    flags.degenerate_fit = fit.flags.degenerate_fit;
    if (points.size() >= 2) {
        const auto w = weights(points);
        double sw = 0, sy = 0;
        for (size_t i = 0; i < points.size(); i++) {
            sw += w[i];
            sy += w[i] * points[i].mean;
        }
        const double ybar = sy / sw;
        double chi2 = 0;
        for (size_t i = 0; i < points.size(); i++) {
            chi2 += w[i] * (points[i].mean - ybar) * (points[i].mean - ybar);
        }
        if (statistical_weights(points)) {
            boost::math::chi_squared dist(static_cast<double>(points.size() - 1));
            flags.lambda_independent = chi2 < boost::math::quantile(dist, 0.95);
        } else {
            flags.lambda_independent = std::all_of(points.begin(), points.end(), [&](const NoisePoint &p) {
                return p.mean == points[0].mean;
            });
        }
    }
    flags.out_of_range = !(std::abs(fit.zero_noise_value) <= 1 + 3 * fit.zero_noise_std_error);
    return flags;
}

std::string to_string(ModelChoice c) {
    switch (c) {
        case ModelChoice::L:
            return "L";
        case ModelChoice::Q:
            return "Q";
        case ModelChoice::E:
            return "E";
        case ModelChoice::NF:
            return "NF";
    }
    return "?";
}

ModelChoice select_model(
    std::span<const ModelCandidate> candidates,
    double best_abs_error,
    double preference_threshold,
    double nf_threshold) {
    if (candidates.empty()) {
        throw std::invalid_argument("select_model needs at least one candidate");
    }
    if (best_abs_error > nf_threshold) {
        return ModelChoice::NF;
    }
    const ModelCandidate *current = nullptr;
    for (const auto &c : candidates) {
        if (std::isnan(c.rmse)) {
            continue;
        }
        if (!current || current->rmse - c.rmse > preference_threshold) {
            current = &c;
        }
    }
    return current ? current->model : ModelChoice::NF;
}

}  // namespace dzne
