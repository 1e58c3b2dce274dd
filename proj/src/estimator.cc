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

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "dzne/density_matrix.h"
#include "dzne/readout.h"
#include "dzne/rng.h"
#include "dzne/sampling.h"
#include "dzne/twirl.h"

namespace dzne {

void EstimatorJob::validate() const {
    if (observables.empty()) {
        throw std::invalid_argument("job has no observables");
    }
    for (const auto &o : observables) {
        if (o.size() != circuit.num_qubits()) {
            throw std::invalid_argument("observable " + o.str() + " does not match the circuit's qubit count");
        }
    }
    if (noise_factors.empty()) {
        throw std::invalid_argument("job has no noise factors");
    }
    for (size_t i = 0; i < noise_factors.size(); i++) {
        if (!(noise_factors[i] >= 1)) {
            throw std::invalid_argument("noise factors must be >= 1");
        }
        if (i > 0 && !(noise_factors[i] > noise_factors[i - 1])) {
            throw std::invalid_argument("noise factors must be strictly increasing");
        }
    }
    if (fold_samples == 0) {
        throw std::invalid_argument("fold_samples must be >= 1");
    }
    if (!exact() && total_shots_per_factor < variants_per_factor()) {
        throw std::invalid_argument("fewer shots per noise factor than circuit variants");
    }
}

std::vector<uint64_t> allocate_shots(uint64_t total_per_factor, size_t fold_samples, size_t num_twirls) {
    const uint64_t v = fold_samples * std::max<size_t>(num_twirls, 1);
    if (v == 0) {
        throw std::invalid_argument("fold_samples must be >= 1");
    }
    if (total_per_factor < v) {
        throw std::invalid_argument("fewer shots than circuit variants");
    }
    std::vector<uint64_t> out(v, total_per_factor / v);
    for (uint64_t i = 0; i < total_per_factor % v; i++) {
        out[i]++;
    }
    return out;
}

std::vector<ExecutionVariant> build_execution_plan(const EstimatorJob &job) {
    job.validate();
    const size_t twirls = std::max<size_t>(job.num_twirls, 1);
    std::vector<uint64_t> shots = job.exact() ? std::vector<uint64_t>(job.variants_per_factor(), 0)
                                              : allocate_shots(job.total_shots_per_factor, job.fold_samples, job.num_twirls);
    std::vector<ExecutionVariant> plan;
    plan.reserve(job.variants_per_factor() * job.observables.size() * job.noise_factors.size());
    for (size_t s = 0; s < job.fold_samples; s++) {
        for (size_t t = 0; t < twirls; t++) {
            for (size_t o = 0; o < job.observables.size(); o++) {
                for (size_t f = 0; f < job.noise_factors.size(); f++) {
                    ExecutionVariant v;
                    v.index = plan.size();
                    v.fold_sample = s;
                    v.twirl = t;
                    v.observable = o;
                    v.factor_index = f;
                    v.lambda = job.noise_factors[f];
                    v.shots = shots[s * twirls + t];
                    v.seed = derive_seed(job.seed, {kSampleTag, v.index});
                    plan.push_back(v);
                }
            }
        }
    }
    return plan;
}

namespace {

struct VariantEstimate {
    uint64_t shots;
    double mean;
    double std_error;
};

NoisePoint combine(double lambda_eff, const std::vector<VariantEstimate> &vs, bool exact) {
    NoisePoint p;
    p.lambda_eff = lambda_eff;
    const double count = static_cast<double>(vs.size());
    if (exact) {
        double sum = 0;
        for (const auto &v : vs) {
            sum += v.mean;
        }
        p.mean = sum / count;
        return p;
    }
    double n = 0, weighted = 0, plain = 0;
    for (const auto &v : vs) {
        n += static_cast<double>(v.shots);
        weighted += static_cast<double>(v.shots) * v.mean;
        plain += v.mean;
    }
    p.mean = weighted / n;
    p.shots = static_cast<uint64_t>(n);
    double shot_var = 0;
    for (const auto &v : vs) {
        const double nv = static_cast<double>(v.shots);
        shot_var += nv * nv * v.std_error * v.std_error;
    }
    shot_var /= n * n;
    double between = 0;
    if (vs.size() > 1) {
        const double avg = plain / count;
        for (const auto &v : vs) {
            between += (v.mean - avg) * (v.mean - avg);
        }
        between /= count - 1;
    }
    p.std_error = std::sqrt(shot_var + between / count);
    return p;
}

}  // namespace

MitigatedResult run_mitigated_estimator(const EstimatorJob &job, const NoiseModel &noise) {
    job.validate();
    noise.validate();
    if (auto report = validate_native(job.circuit); !report) {
        throw std::invalid_argument("circuit is not native: " + report.message);
    }
    const uint32_t n = job.circuit.num_qubits();
    const size_t nf = job.noise_factors.size();
    const bool exact = job.exact();

    std::vector<ReadoutError> readout(n);
    for (uint32_t q = 0; q < n; q++) {
        readout[q] = noise.readout_for(q);
    }

    MitigatedResult result;
    auto &prov = result.provenance;
    prov["seed"] = job.seed;
    prov["exact"] = exact;
    prov["noise_factors"] = job.noise_factors;
    prov["fold_samples"] = job.fold_samples;
    prov["num_twirls"] = job.num_twirls;
    prov["scope"] = to_string(job.scope);
    prov["foldable"] = to_string(job.foldable);
    prov["circuit_fingerprint"] = job.circuit.fingerprint();

    // Stage C: readout calibration.
    ConfusionModel confusion;
    if (job.readout_mitigation) {
        if (exact) {
            confusion = ConfusionModel(readout);
        } else {
            uint64_t cal = job.readout_calibration_shots ? job.readout_calibration_shots : job.total_shots_per_factor;
            uint64_t cal_seed = derive_seed(job.seed, {kReadoutTag});
            confusion = estimate_confusion(noise, n, cal, cal_seed);
            prov["readout_calibration"] = {{"shots", cal}, {"seed", cal_seed}};
        }
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &r : confusion.qubits()) {
            rows.push_back({r.p01, r.p10});
        }
        prov["confusion"] = rows;
    }

    // Stage B: amplification.
    const size_t d = count_foldable(job.circuit, job.foldable);
    std::vector<std::vector<FoldedCircuit>> ensembles(nf);
    std::vector<double> lambda_eff(nf);
    nlohmann::json plans = nlohmann::json::array();
    for (size_t f = 0; f < nf; f++) {
        if (d == 0) {
            FoldingPlan identity = plan_fold(job.circuit, 1, job.scope, job.foldable, 0);
            identity.target_lambda = job.noise_factors[f];
            ensembles[f].push_back({job.circuit, identity, job.fold_samples});
            lambda_eff[f] = job.noise_factors[f];
        } else {
            ensembles[f] = sample_fold_ensemble(
                job.circuit, job.noise_factors[f], job.fold_samples, job.scope, job.foldable,
                derive_seed(job.seed, {kFoldTag, f}));
            lambda_eff[f] = ensembles[f][0].plan.lambda_eff;
        }
        nlohmann::json per_factor = nlohmann::json::array();
        for (const auto &fc : ensembles[f]) {
            auto j = to_json(fc.plan);
            j["multiplicity"] = fc.multiplicity;
            per_factor.push_back(j);
        }
        plans.push_back(per_factor);
    }
    prov["fold_plans"] = plans;
    prov["lambda_eff"] = lambda_eff;
    if (!exact) {
        prov["shot_allocation"] = allocate_shots(job.total_shots_per_factor, job.fold_samples, job.num_twirls);
    }

    // Stages D, E, G, H in plan order.
    const auto plan = build_execution_plan(job);
    std::map<size_t, DensityMatrix> shared;  // collapsed ensembles without twirling
    std::map<size_t, DensityMatrix> group;
    size_t current_group = SIZE_MAX;
    const size_t twirls = std::max<size_t>(job.num_twirls, 1);

    std::vector<std::vector<std::vector<VariantEstimate>>> estimates(
        job.observables.size(), std::vector<std::vector<VariantEstimate>>(nf));
    nlohmann::json variants = nlohmann::json::array();
    for (const auto &v : plan) {
        const size_t g = v.fold_sample * twirls + v.twirl;
        if (g != current_group) {
            group.clear();
            current_group = g;
        }
        const auto &ens = ensembles[v.factor_index];
        const bool collapsed = ens.size() == 1;
        auto &cache = (collapsed && job.num_twirls == 0) ? shared : group;
        auto it = cache.find(v.factor_index);
        if (it == cache.end()) {
            const Circuit &folded = ens[collapsed ? 0 : v.fold_sample].circuit;
            DensityMatrix rho = job.num_twirls == 0
                                    ? simulate(folded, noise)
                                    : simulate(
                                          twirl_circuit(
                                              folded,
                                              derive_seed(job.seed, {kTwirlTag, v.factor_index, v.fold_sample, v.twirl})),
                                          noise);
            it = cache.emplace(v.factor_index, std::move(rho)).first;
        }
        const DensityMatrix &rho = it->second;
        const PauliString &obs = job.observables[v.observable];

        Estimate est;
        if (exact) {
            est.mean = job.readout_mitigation ? exact_expectation(rho, obs)
                                              : exact_expectation_with_readout(rho, obs, readout);
        } else {
            Counts counts = sample_counts(rho, obs, v.shots, readout, v.seed);
            if (job.readout_mitigation) {
                est = corrected_expectation(correct_counts(counts, confusion), obs, confusion);
            } else {
                est = expectation_from_counts(counts, obs);
            }
        }
        estimates[v.observable][v.factor_index].push_back({v.shots, est.mean, est.std_error});
        variants.push_back({
            {"index", v.index},
            {"fold_sample", v.fold_sample},
            {"twirl", v.twirl},
            {"observable", v.observable},
            {"lambda", v.lambda},
            {"shots", v.shots},
            {"seed", v.seed},
            {"mean", est.mean},
            {"stderr", est.std_error},
        });
    }
    prov["variants"] = variants;

    // Stages F and I.
    for (size_t o = 0; o < job.observables.size(); o++) {
        ObservableResult r;
        r.observable = job.observables[o];
        for (size_t f = 0; f < nf; f++) {
            r.points.push_back(combine(lambda_eff[f], estimates[o][f], exact));
        }
        for (const auto &m : job.models) {
            try {
                r.fits.push_back(fit_model(r.points, m));
            } catch (const FitError &e) {
                if (!job.tolerate_fit_errors) {
                    throw;
                }
                ExtrapolationFit failed;
                failed.model = m;
                failed.zero_noise_value = failed.zero_noise_std_error = failed.rss =
                    std::numeric_limits<double>::quiet_NaN();
                failed.error = e.what();
                r.fits.push_back(std::move(failed));
            }
        }
        const ExtrapolationFit *chosen = nullptr;
        for (const auto &fit : r.fits) {
            if (fit.error.empty() && !chosen) {
                chosen = &fit;
            }
            if (fit.error.empty() && !fit.flags.out_of_range && !fit.flags.degenerate_fit) {
                chosen = &fit;
                break;
            }
        }
        if (chosen) {
            r.chosen_value = chosen->zero_noise_value;
            r.chosen_std_error = chosen->zero_noise_std_error;
            r.chosen_model = chosen->model.name();
        } else {
            r.chosen_value = std::numeric_limits<double>::quiet_NaN();
            r.chosen_std_error = std::numeric_limits<double>::quiet_NaN();
        }
        result.observables.push_back(std::move(r));
    }
    return result;
}

}  // namespace dzne
