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

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dzne/density_matrix.h"
#include "dzne/estimator.h"
#include "dzne/parallel.h"
#include "dzne/rng.h"
#include "dzne/text_util.h"

namespace dzne {

namespace {

double ideal_value(const Circuit &circuit, const PauliString &obs) {
    return exact_expectation(simulate(circuit, NoiseModel{}), obs);
}

double sample_std(const std::vector<double> &xs) {
    if (xs.size() < 2) {
        return 0;
    }
    double mean = 0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double average(const std::vector<double> &xs) {
    double s = 0;
    for (double x : xs) {
        s += x;
    }
    return xs.empty() ? 0 : s / static_cast<double>(xs.size());
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, size_t count) {
    if (count == 0 || !(lo > 0) || !(hi > 0)) {
        throw std::invalid_argument("log_spaced needs positive bounds and count");
    }
    std::vector<double> out(count);
    for (size_t i = 0; i < count; i++) {
        double t = count == 1 ? 0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    out.front() = lo;
    out.back() = count == 1 ? lo : hi;
    return out;
}

// ---------------------------------------------------------------------------

CalibrationConfig CalibrationConfig::defaults() {
    CalibrationConfig c;
    for (uint32_t d = 0; d <= 40; d += 2) {
        c.depths.push_back(d);
    }
    c.error_probs = log_spaced(0.001, 0.04, 8);
    return c;
}

std::vector<CalibrationCell> run_calibration_sweep(const CalibrationConfig &config) {
    if (config.repetitions == 0) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
    for (uint32_t d : config.depths) {
        if (d % 2) {
            throw std::invalid_argument("calibration depths must be even");
        }
    }
    const size_t ne = config.error_probs.size();
    std::vector<CalibrationCell> cells(config.depths.size() * ne);
    const auto obs = PauliString::z_all(config.n);
    parallel_for(cells.size(), [&](size_t idx) {
        const uint32_t depth = config.depths[idx / ne];
        const size_t ei = idx % ne;
        const double p = config.error_probs[ei];
        const uint64_t cell_seed = derive_seed(config.seed, {depth, ei});
        double sq[3] = {0, 0, 0};
        for (size_t rep = 0; rep < config.repetitions; rep++) {
            Circuit circuit =
                build_spin_chain(config.n, depth / 2, config.theta1, 0, 0, derive_seed(cell_seed, {rep, 0}));
            const double ideal = ideal_value(circuit, obs);
            EstimatorJob job;
            job.circuit = std::move(circuit);
            job.observables = {obs};
            job.noise_factors = config.noise_factors;
            job.fold_samples = config.fold_samples;
            job.total_shots_per_factor = config.shots;
            job.models = {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::exponential()};
            job.seed = derive_seed(cell_seed, {rep, 1});
            job.tolerate_fit_errors = true;
            auto result = run_mitigated_estimator(job, NoiseModel::depolarizing(p));
            const auto &fits = result.observables[0].fits;
            for (int m = 0; m < 3; m++) {
                const double e = fits[m].zero_noise_value - ideal;
                sq[m] += e * e;
            }
        }
        CalibrationCell &cell = cells[idx];
        cell.depth = depth;
        cell.error_prob = p;
        const double r = static_cast<double>(config.repetitions);
        cell.rmse_L = std::sqrt(sq[0] / r);
        cell.rmse_Q = std::sqrt(sq[1] / r);
        cell.rmse_E = std::sqrt(sq[2] / r);
        // Models that could not be fitted (too few distinct lambda_eff) have NaN RMSE.
        cell.best_abs_error = std::fmin(cell.rmse_L, std::fmin(cell.rmse_Q, cell.rmse_E));
        const ModelCandidate candidates[3] = {
            {ModelChoice::L, cell.rmse_L}, {ModelChoice::Q, cell.rmse_Q}, {ModelChoice::E, cell.rmse_E}};
        cell.label = std::isnan(cell.best_abs_error) ? ModelChoice::NF
                                                      : select_model(
                                                            candidates, cell.best_abs_error,
                                                            config.preference_threshold, config.nf_threshold);
    });
    return cells;
}

void write_calibration_csv(std::ostream &out, const std::vector<CalibrationCell> &cells) {
    out << "depth,error_prob,rmse_L,rmse_Q,rmse_E,best_abs_error,label\n";
    for (const auto &c : cells) {
        out << c.depth << ',' << format_double(c.error_prob) << ',' << format_double(c.rmse_L) << ','
            << format_double(c.rmse_Q) << ',' << format_double(c.rmse_E) << ',' << format_double(c.best_abs_error)
            << ',' << to_string(c.label) << '\n';
    }
}

// ---------------------------------------------------------------------------

std::vector<PartialFoldRow> run_partial_fold_study(const PartialFoldConfig &config) {
    if (config.repetitions < 2) {
        throw std::invalid_argument("the partial-fold study needs at least 2 repetitions");
    }
    const auto obs = PauliString::z_all(config.n);
    std::vector<Circuit> circuits;
    std::vector<NoiseModel> noises;
    for (uint32_t total : config.total_2q) {
        circuits.push_back(build_brickwork(config.n, total, config.kind));
        Rng rng(derive_seed(config.seed, {0, total}));
        NoiseModel noise;
        for (uint32_t q = 0; q + 1 < config.n; q++) {
            noise.set_depol_2q(q, q + 1, rng.uniform(config.p_min, config.p_max));
        }
        noises.push_back(noise);
    }

    const size_t nt = config.total_2q.size(), ns = config.sample_counts.size(), nr = config.repetitions;
    std::vector<double> values(nt * ns * nr);
    parallel_for(values.size(), [&](size_t idx) {
        const size_t ti = idx / (ns * nr);
        const size_t si = (idx / nr) % ns;
        const size_t rep = idx % nr;
        EstimatorJob job;
        job.tolerate_fit_errors = true;
        job.circuit = circuits[ti];
        job.observables = {obs};
        job.noise_factors = config.noise_factors;
        job.fold_samples = config.sample_counts[si];
        job.total_shots_per_factor = config.shots;
        job.seed = derive_seed(config.seed, {1, config.total_2q[ti], config.sample_counts[si], rep});
        values[idx] = run_mitigated_estimator(job, noises[ti]).observables[0].fits[0].zero_noise_value;
    });

    std::vector<PartialFoldRow> rows;
    for (size_t ti = 0; ti < nt; ti++) {
        for (size_t si = 0; si < ns; si++) {
            PartialFoldRow row;
            row.total_2q = config.total_2q[ti];
            row.num_samples = config.sample_counts[si];
            auto begin = values.begin() + static_cast<ptrdiff_t>((ti * ns + si) * nr);
            row.values.assign(begin, begin + static_cast<ptrdiff_t>(nr));
            row.mean = average(row.values);
            row.std_dev = sample_std(row.values);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_partial_fold_csv(std::ostream &out, const std::vector<PartialFoldRow> &rows) {
    out << "total_2q,num_samples,repetitions,mean_zne,std_zne\n";
    for (const auto &r : rows) {
        out << r.total_2q << ',' << r.num_samples << ',' << r.values.size() << ',' << format_double(r.mean) << ','
            << format_double(r.std_dev) << '\n';
    }
}

// ---------------------------------------------------------------------------

ShotScalingResult run_shot_scaling_study(const ShotScalingConfig &config) {
    if (config.repetitions < 2) {
        throw std::invalid_argument("the shot-scaling study needs at least 2 repetitions");
    }
    const auto obs = PauliString::z_all(config.n);
    const Circuit circuit = build_spin_chain(config.n, config.steps, config.theta1, 0, 0, derive_seed(config.seed, {0}));
    const size_t np = config.error_probs.size(), ns = config.shots.size(), nr = config.repetitions;
    std::vector<double> values(np * ns * nr);
    parallel_for(values.size(), [&](size_t idx) {
        const size_t pi = idx / (ns * nr);
        const size_t si = (idx / nr) % ns;
        const size_t rep = idx % nr;
        EstimatorJob job;
        job.tolerate_fit_errors = true;
        job.circuit = circuit;
        job.observables = {obs};
        job.noise_factors = config.noise_factors;
        job.total_shots_per_factor = config.shots[si];
        job.seed = derive_seed(config.seed, {1, pi, config.shots[si], rep});
        values[idx] = run_mitigated_estimator(job, NoiseModel::depolarizing(config.error_probs[pi]))
                          .observables[0]
                          .fits[0]
                          .zero_noise_value;
    });

    ShotScalingResult result;
    for (size_t pi = 0; pi < np; pi++) {
        std::vector<double> xs, ys;
        bool any_zero = false;
        for (size_t si = 0; si < ns; si++) {
            auto begin = values.begin() + static_cast<ptrdiff_t>((pi * ns + si) * nr);
            std::vector<double> vs(begin, begin + static_cast<ptrdiff_t>(nr));
            ShotScalingRow row{config.error_probs[pi], config.shots[si], average(vs), sample_std(vs)};
            result.rows.push_back(row);
            if (row.sigma > 0 && row.shots > 0) {
                xs.push_back(std::log(static_cast<double>(row.shots)));
                ys.push_back(std::log(row.sigma));
            } else {
                any_zero = true;
            }
        }
        ShotScalingFit fit{config.error_probs[pi], 0, std::numeric_limits<double>::quiet_NaN()};
        if (!any_zero && xs.size() >= 2) {
            const double xb = average(xs), yb = average(ys);
            double sxx = 0, sxy = 0;
            for (size_t i = 0; i < xs.size(); i++) {
                sxx += (xs[i] - xb) * (xs[i] - xb);
                sxy += (xs[i] - xb) * (ys[i] - yb);
            }
            if (sxx > 0) {
                const double slope = sxy / sxx;
                fit.exponent = -slope;
                fit.a = std::exp(yb - slope * xb);
            }
        }
        result.fits.push_back(fit);
    }
    return result;
}

void write_shot_scaling_csv(std::ostream &out, const ShotScalingResult &result) {
    out << "error_prob,shots,mean_zne,sigma,fit_a,fit_exponent\n";
    for (const auto &r : result.rows) {
        const ShotScalingFit *fit = nullptr;
        for (const auto &f : result.fits) {
            if (f.error_prob == r.error_prob) {
                fit = &f;
            }
        }
        out << format_double(r.error_prob) << ',' << r.shots << ',' << format_double(r.mean) << ','
            << format_double(r.sigma) << ',' << format_double(fit ? fit->a : 0) << ','
            << format_double(fit ? fit->exponent : std::numeric_limits<double>::quiet_NaN()) << '\n';
    }
}

// ---------------------------------------------------------------------------

std::vector<ReadoutStudyRow> run_readout_study(const ReadoutStudyConfig &config) {
    if (config.repetitions == 0) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
    const auto obs = PauliString::z_all(config.n);
    NoiseModel noise = NoiseModel::depolarizing(config.depol);
    noise.set_uniform_readout(config.n, config.p01, config.p10);
    const size_t nd = config.steps.size(), nr = config.repetitions;
    struct Errors {
        double raw, zne, zne_ro;
    };
    std::vector<Errors> errs(nd * nr);
    parallel_for(errs.size(), [&](size_t idx) {
        const uint32_t steps = config.steps[idx / nr];
        const size_t rep = idx % nr;
        Circuit circuit = build_spin_chain(config.n, steps, config.theta1, 0, 0, derive_seed(config.seed, {0, steps, rep}));
        const double ideal = ideal_value(circuit, obs);
        EstimatorJob job;
        job.tolerate_fit_errors = true;
        job.circuit = std::move(circuit);
        job.observables = {obs};
        job.noise_factors = config.noise_factors;
        job.total_shots_per_factor = config.shots;
        job.seed = derive_seed(config.seed, {1, steps, rep});
        auto plain = run_mitigated_estimator(job, noise).observables[0];
        job.readout_mitigation = true;
        auto mitigated = run_mitigated_estimator(job, noise).observables[0];
        errs[idx] = {
            std::abs(plain.points[0].mean - ideal),
            std::abs(plain.fits[0].zero_noise_value - ideal),
            std::abs(mitigated.fits[0].zero_noise_value - ideal)};
    });
    std::vector<ReadoutStudyRow> rows;
    for (size_t di = 0; di < nd; di++) {
        ReadoutStudyRow row;
        row.steps = config.steps[di];
        for (size_t rep = 0; rep < nr; rep++) {
            const auto &e = errs[di * nr + rep];
            row.err_unmitigated += e.raw / static_cast<double>(nr);
            row.err_zne += e.zne / static_cast<double>(nr);
            row.err_zne_ro += e.zne_ro / static_cast<double>(nr);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_readout_csv(std::ostream &out, const std::vector<ReadoutStudyRow> &rows) {
    out << "steps,depth_2q,err_unmitigated,err_zne,err_zne_ro,gap\n";
    for (const auto &r : rows) {
        out << r.steps << ',' << 2 * r.steps << ',' << format_double(r.err_unmitigated) << ','
            << format_double(r.err_zne) << ',' << format_double(r.err_zne_ro) << ',' << format_double(r.gap())
            << '\n';
    }
}

// ---------------------------------------------------------------------------

std::vector<TwirlStudyRow> run_twirl_study(const TwirlStudyConfig &config) {
    if (config.repetitions == 0) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
    const auto obs = PauliString::z_all(config.n);
    NoiseModel noise = NoiseModel::depolarizing(config.depol);
    noise.coherent_epsilon = config.epsilon;
    const size_t nd = config.steps.size(), nr = config.repetitions, nt = config.twirl_counts.size();
    std::vector<double> ideals(nd * nr);
    std::vector<Circuit> circuits;
    for (size_t di = 0; di < nd; di++) {
        for (size_t rep = 0; rep < nr; rep++) {
            circuits.push_back(build_spin_chain(
                config.n, config.steps[di], config.theta1, 0, 0, derive_seed(config.seed, {0, config.steps[di], rep})));
            ideals[di * nr + rep] = ideal_value(circuits.back(), obs);
        }
    }
    std::vector<double> errors(nt * nd * nr);
    parallel_for(errors.size(), [&](size_t idx) {
        const size_t ti = idx / (nd * nr);
        const size_t cell = idx % (nd * nr);
        EstimatorJob job;
        job.tolerate_fit_errors = true;
        job.circuit = circuits[cell];
        job.observables = {obs};
        job.noise_factors = config.noise_factors;
        job.num_twirls = config.twirl_counts[ti];
        job.total_shots_per_factor = config.shots;
        job.seed = derive_seed(config.seed, {1, config.steps[cell / nr], cell % nr});
        errors[idx] = run_mitigated_estimator(job, noise).observables[0].fits[0].zero_noise_value - ideals[cell];
    });
    std::vector<TwirlStudyRow> rows;
    for (size_t ti = 0; ti < nt; ti++) {
        double total = 0;
        for (size_t di = 0; di < nd; di++) {
            double sq = 0;
            for (size_t rep = 0; rep < nr; rep++) {
                const double e = errors[(ti * nd + di) * nr + rep];
                sq += e * e;
            }
            total += sq;
            rows.push_back({config.twirl_counts[ti], config.steps[di], std::sqrt(sq / static_cast<double>(nr))});
        }
        rows.push_back({config.twirl_counts[ti], 0, std::sqrt(total / static_cast<double>(nd * nr))});
    }
    return rows;
}

void write_twirl_csv(std::ostream &out, const std::vector<TwirlStudyRow> &rows) {
    out << "num_twirls,steps,rmse\n";
    for (const auto &r : rows) {
        out << r.num_twirls << ',' << (r.steps ? std::to_string(r.steps) : std::string("all")) << ','
            << format_double(r.rmse) << '\n';
    }
}

// ---------------------------------------------------------------------------

BenchmarkConfig BenchmarkConfig::defaults() {
    BenchmarkConfig c;
    for (uint32_t s = 1; s <= 35; s++) {
        c.steps.push_back(s);
    }
    return c;
}

std::string noise_set_label(const std::vector<double> &factors) {
    std::string s;
    for (size_t i = 0; i < factors.size(); i++) {
        if (i) {
            s += '|';
        }
        s += format_double(factors[i]);
    }
    return s;
}

namespace {

/// RMS over qubits of value - ideal, with a first-order error estimate.
std::pair<double, double> eps_avg(
    const std::vector<double> &values, const std::vector<double> &errors, const std::vector<double> &ideal) {
    const size_t n = values.size();
    double sq = 0;
    for (size_t i = 0; i < n; i++) {
        sq += (values[i] - ideal[i]) * (values[i] - ideal[i]);
    }
    const double eps = std::sqrt(sq / static_cast<double>(n));
    if (!(eps > 0)) {
        return {eps, 0};
    }
    double var = 0;
    for (size_t i = 0; i < n; i++) {
        const double g = (values[i] - ideal[i]) / (static_cast<double>(n) * eps);
        var += g * g * errors[i] * errors[i];
    }
    return {eps, std::sqrt(var)};
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig &config) {
    if (config.n > DensityMatrix::kMaxQubits) {
        throw std::invalid_argument("benchmark qubit count exceeds the simulator limit");
    }
    std::vector<PauliString> observables;
    for (uint32_t q = 0; q < config.n; q++) {
        observables.push_back(PauliString::z_at(config.n, q));
    }
    NoiseModel noise = NoiseModel::depolarizing(config.depol);
    noise.coherent_epsilon = config.epsilon;
    noise.set_uniform_readout(config.n, config.p01, config.p10);
    const uint64_t disorder = derive_seed(config.seed, {0});

    std::vector<std::vector<BenchmarkRow>> per_depth(config.steps.size());
    parallel_for(config.steps.size(), [&](size_t di) {
        const uint32_t steps = config.steps[di];
        const uint32_t depth = 2 * steps;
        Circuit circuit = build_spin_chain(config.n, steps, 0, 0, 0, disorder);
        DensityMatrix ideal_rho = simulate(circuit, NoiseModel{});
        std::vector<double> ideal;
        for (const auto &o : observables) {
            ideal.push_back(exact_expectation(ideal_rho, o));
        }
        auto &rows = per_depth[di];

        EstimatorJob base;
        base.tolerate_fit_errors = true;
        base.circuit = circuit;
        base.observables = observables;
        base.total_shots_per_factor = config.shots;
        base.fold_samples = config.fold_samples;

        EstimatorJob raw = base;
        raw.noise_factors = {1};
        raw.fold_samples = 1;
        raw.models = {};
        raw.seed = derive_seed(config.seed, {1, steps});
        auto raw_result = run_mitigated_estimator(raw, noise);
        std::vector<double> v, e;
        for (const auto &o : raw_result.observables) {
            v.push_back(o.points[0].mean);
            e.push_back(o.points[0].std_error);
        }
        auto [eps, se] = eps_avg(v, e, ideal);
        rows.push_back({depth, "none", "no-mit", eps, se});

        for (size_t k = 0; k < config.noise_factor_sets.size(); k++) {
            EstimatorJob job = base;
            job.noise_factors = config.noise_factor_sets[k];
            job.num_twirls = config.num_twirls;
            job.readout_mitigation = true;
            job.models = {ExtrapolationModel::linear(), ExtrapolationModel::poly(2), ExtrapolationModel::exponential()};
            job.seed = derive_seed(config.seed, {2, steps, k});
            auto result = run_mitigated_estimator(job, noise);
            const std::string label = noise_set_label(job.noise_factors);
            if (job.noise_factors[0] == 1) {
                v.clear();
                e.clear();
                for (const auto &o : result.observables) {
                    v.push_back(o.points[0].mean);
                    e.push_back(o.points[0].std_error);
                }
                auto [eps1, se1] = eps_avg(v, e, ideal);
                rows.push_back({depth, label, "RO+RC", eps1, se1});
            }
            const char *names[3] = {"RO+RC+L", "RO+RC+Q", "RO+RC+E"};
            for (size_t m = 0; m < 3; m++) {
                v.clear();
                e.clear();
                for (const auto &o : result.observables) {
                    v.push_back(o.fits[m].zero_noise_value);
                    e.push_back(o.fits[m].zero_noise_std_error);
                }
                auto [epsm, sem] = eps_avg(v, e, ideal);
                rows.push_back({depth, label, names[m], epsm, sem});
            }
        }
    });
    std::vector<BenchmarkRow> out;
    for (auto &rows : per_depth) {
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

void write_benchmark_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows) {
    out << "depth_2q,noise_set,strategy,eps_avg,eps_avg_stderr\n";
    for (const auto &r : rows) {
        out << r.depth_2q << ',' << r.noise_set << ',' << r.strategy << ',' << format_double(r.eps_avg) << ','
            << format_double(r.eps_avg_stderr) << '\n';
    }
}

}  // namespace dzne
