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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "dzne/circuit.h"
#include "dzne/estimator.h"
#include "dzne/parallel.h"
#include "dzne/readout.h"
#include "dzne/studies.h"
#include "dzne/text_util.h"
#include "dzne/version.h"

using namespace dzne;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// Bad user input that only shows up after parsing (unreadable files etc).
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    return out;
}

std::string default_provenance_path(const std::string &csv) {
    std::filesystem::path p(csv);
    p.replace_extension(".json");
    return p.string();
}

/// Options set on the command line or in the config file, as given.
nlohmann::json given_options(const CLI::App &sub) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto *opt : sub.get_options()) {
        if (opt->count() > 0 && !opt->get_lnames().empty()) {
            j[opt->get_lnames()[0]] = opt->results();
        }
    }
    return j;
}

/// Common output options and provenance for every subcommand.
struct RunOutputs {
    std::string csv;
    std::string provenance;
    uint64_t seed = 0;

    void add(CLI::App *sub, const std::string &default_csv, bool seed_required) {
        csv = default_csv;
        sub->add_option("--out", csv, "CSV output path");
        sub->add_option("--provenance", provenance, "JSON provenance path (default: CSV path with .json)");
        auto *s = sub->add_option("--seed", seed, "Master seed");
        if (seed_required) {
            s->required();
        }
    }

    void write_provenance(const CLI::App &sub, nlohmann::json extra) const {
        nlohmann::json j = {
            {"tool", "dzne"},
            {"version", kVersion},
            {"command", sub.get_name()},
            {"seed", seed},
            {"options_given", given_options(sub)},
            {"threads", parallel_workers().load()},
            {"outputs", {{"csv", csv}}},
        };
        for (auto &[k, v] : extra.items()) {
            j[k] = v;
        }
        auto out = open_output(provenance.empty() ? default_provenance_path(csv) : provenance);
        out << j.dump(2) << '\n';
    }
};

std::vector<std::vector<double>> parse_factor_sets(const std::string &text) {
    std::vector<std::vector<double>> sets;
    for (auto part : split(text, ';')) {
        std::vector<double> set;
        for (auto tok : split(trim(part), ',')) {
            set.push_back(parse_double(trim(tok)));
        }
        sets.push_back(std::move(set));
    }
    return sets;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    RunOutputs io;
    std::string circuit_path;
    uint32_t chain_qubits = 0;
    uint32_t chain_steps = 1;
    double theta1 = kDefaultTheta1, theta2 = 0, theta3 = 0;
    uint64_t disorder_seed = 0;
    std::vector<std::string> observables;
    double depol = 0.01, depol_1q = 0, epsilon = 0, p01 = 0, p10 = 0;
    std::string readout_csv;
    std::vector<double> noise_factors{1, 3, 5};
    size_t fold_samples = 1, twirls = 0;
    bool readout_mitigation = false;
    uint64_t shots = 8000, readout_shots = 0;
    std::vector<std::string> models{"linear"};
    std::string scope = "local", foldable = "2q-only";
    std::string fits_out, plans_out, confusion_out;

    void add(CLI::App *sub) {
        io.add(sub, "estimate.csv", false);
        auto *path = sub->add_option("--circuit", circuit_path, "Circuit text file");
        auto *chain = sub->add_option("--chain-qubits", chain_qubits, "Build a spin chain on this many qubits instead");
        path->excludes(chain);
        sub->add_option("--chain-steps", chain_steps, "Spin-chain Trotter steps");
        sub->add_option("--theta1", theta1, "Spin-chain U3 theta");
        sub->add_option("--theta2", theta2, "Spin-chain U3 phi");
        sub->add_option("--theta3", theta3, "Spin-chain U3 lambda");
        sub->add_option("--disorder-seed", disorder_seed, "Spin-chain disorder seed");
        sub->add_option("--observable", observables, "Pauli string, e.g. ZZII or -XIXI (default: Z on every qubit)");
        sub->add_option("--depol", depol, "Two-qubit depolarizing probability")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--depol-1q", depol_1q, "Single-qubit depolarizing probability")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--epsilon", epsilon, "Coherent ZZ over-rotation after each two-qubit gate (rad)");
        sub->add_option("--p01", p01, "Readout P(0|1) on every qubit")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--p10", p10, "Readout P(1|0) on every qubit")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--readout-csv", readout_csv, "Per-qubit readout errors (qubit,p01,p10)");
        sub->add_option("--noise-factors", noise_factors, "Strictly increasing noise factors")->delimiter(',');
        sub->add_option("--fold-samples", fold_samples, "Random fold subsets per noise factor");
        sub->add_option("--twirls", twirls, "Pauli twirls per fold sample (0 disables)");
        sub->add_flag("--readout-mitigation", readout_mitigation, "Calibrate and invert readout errors");
        sub->add_option("--shots", shots, "Shots per noise factor and observable (0: exact)");
        sub->add_option("--readout-shots", readout_shots, "Shots per readout calibration circuit (0: --shots)");
        sub->add_option("--models", models, "linear, poly<d>, exp or exp@<shift>")->delimiter(',');
        sub->add_option("--scope", scope, "Fold scope")->check(CLI::IsMember({"local", "global"}));
        sub->add_option("--foldable", foldable, "Foldable gates")->check(CLI::IsMember({"2q-only", "all-gates"}));
        sub->add_option("--fits-out", fits_out, "Write points and fits as JSON");
        sub->add_option("--plans-out", plans_out, "Write folding plans as JSON");
        sub->add_option("--confusion-out", confusion_out, "Write the calibrated confusion model as CSV");
    }

    int run(const CLI::App &sub) const {
        EstimatorJob job;
        if (!circuit_path.empty()) {
            job.circuit = circuit_from_text(read_file(circuit_path));
        } else if (chain_qubits > 0) {
            job.circuit = build_spin_chain(chain_qubits, chain_steps, theta1, theta2, theta3, disorder_seed);
        } else {
            throw ConfigError("estimate needs --circuit or --chain-qubits");
        }
        const uint32_t n = job.circuit.num_qubits();
        if (observables.empty()) {
            job.observables = {PauliString::z_all(n)};
        } else {
            for (const auto &o : observables) {
                job.observables.push_back(PauliString::parse(o));
            }
        }
        NoiseModel noise = NoiseModel::depolarizing(depol);
        noise.depol_1q = depol_1q;
        noise.coherent_epsilon = epsilon;
        if (!readout_csv.empty()) {
            std::istringstream in(read_file(readout_csv));
            auto model = read_confusion_csv(in);
            if (model.num_qubits() != n) {
                throw ConfigError("readout CSV lists " + std::to_string(model.num_qubits()) + " qubits, circuit has " +
                                  std::to_string(n));
            }
            noise.readout = model.qubits();
        } else if (p01 > 0 || p10 > 0) {
            noise.set_uniform_readout(n, p01, p10);
        }
        job.noise_factors = noise_factors;
        job.fold_samples = fold_samples;
        job.num_twirls = twirls;
        job.readout_mitigation = readout_mitigation;
        job.total_shots_per_factor = shots;
        job.readout_calibration_shots = readout_shots;
        job.models.clear();
        for (const auto &m : models) {
            job.models.push_back(ExtrapolationModel::parse(m));
        }
        job.scope = scope == "local" ? FoldScope::Local : FoldScope::Global;
        job.foldable = foldable == "2q-only" ? Foldable::TwoQubitOnly : Foldable::AllGates;
        job.seed = io.seed;

        auto result = run_mitigated_estimator(job, noise);

        auto csv = open_output(io.csv);
        csv << "observable,model,zero_noise_value,zero_noise_stderr,rss,flags,chosen\n";
        nlohmann::json fits = nlohmann::json::array();
        for (const auto &r : result.observables) {
            nlohmann::json entry = {{"observable", r.observable.str()}};
            nlohmann::json pts = nlohmann::json::array();
            for (const auto &p : r.points) {
                pts.push_back({{"lambda_eff", p.lambda_eff}, {"mean", p.mean}, {"stderr", p.std_error}, {"shots", p.shots}});
            }
            entry["points"] = pts;
            entry["fits"] = nlohmann::json::array();
            for (const auto &f : r.fits) {
                std::string flags;
                for (const auto &name : f.flags.names()) {
                    flags += (flags.empty() ? "" : "|") + name;
                }
                csv << r.observable.str() << ',' << f.model.name() << ',' << format_double(f.zero_noise_value) << ','
                    << format_double(f.zero_noise_std_error) << ',' << format_double(f.rss) << ',' << flags << ','
                    << (f.model.name() == r.chosen_model ? 1 : 0) << '\n';
                entry["fits"].push_back(to_json(f));
            }
            entry["chosen"] = {{"model", r.chosen_model}, {"value", r.chosen_value}, {"stderr", r.chosen_std_error}};
            fits.push_back(entry);
        }
        if (!fits_out.empty()) {
            open_output(fits_out) << fits.dump(2) << '\n';
        }
        if (!plans_out.empty()) {
            open_output(plans_out) << result.provenance["fold_plans"].dump(2) << '\n';
        }
        if (!confusion_out.empty()) {
            if (!readout_mitigation) {
                throw ConfigError("--confusion-out requires --readout-mitigation");
            }
            std::vector<ReadoutError> rows;
            for (const auto &r : result.provenance["confusion"]) {
                rows.push_back({r[0].get<double>(), r[1].get<double>()});
            }
            auto out = open_output(confusion_out);
            write_confusion_csv(out, ConfusionModel(rows));
        }
        nlohmann::json config = {
            {"observables", nlohmann::json::array()},
            {"noise",
             {{"depol_2q", noise.depol_2q_default},
              {"depol_1q", noise.depol_1q},
              {"coherent_epsilon", noise.coherent_epsilon},
              {"readout", nlohmann::json::array()}}},
            {"noise_factors", job.noise_factors},
            {"fold_samples", job.fold_samples},
            {"num_twirls", job.num_twirls},
            {"readout_mitigation", job.readout_mitigation},
            {"total_shots_per_factor", job.total_shots_per_factor},
            {"readout_calibration_shots", job.readout_calibration_shots},
            {"models", models},
            {"scope", scope},
            {"foldable", foldable},
        };
        for (const auto &o : job.observables) {
            config["observables"].push_back(o.str());
        }
        for (const auto &r : noise.readout) {
            config["noise"]["readout"].push_back({r.p01, r.p10});
        }
        io.write_provenance(
            sub, {{"config", config},
                  {"circuit_text", to_text(job.circuit)},
                  {"run", result.provenance},
                  {"results", fits}});
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------

struct CalibrateArgs {
    RunOutputs io;
    CalibrationConfig c = CalibrationConfig::defaults();

    void add(CLI::App *sub) {
        io.add(sub, "calibration.csv", true);
        sub->add_option("--qubits", c.n, "Spin-chain qubits");
        sub->add_option("--depths", c.depths, "Even two-qubit depths")->delimiter(',');
        sub->add_option("--error-probs", c.error_probs, "Two-qubit depolarizing probabilities")->delimiter(',');
        sub->add_option("--noise-factors", c.noise_factors, "Noise factors")->delimiter(',');
        sub->add_option("--shots", c.shots, "Shots per noise factor (0: exact)");
        sub->add_option("--repetitions", c.repetitions, "Random circuits per cell");
        sub->add_option("--fold-samples", c.fold_samples, "Random fold subsets per noise factor");
        sub->add_option("--theta1", c.theta1, "Spin-chain U3 theta");
        sub->add_option("--preference-threshold", c.preference_threshold, "RMSE gain needed to prefer a later model");
        sub->add_option("--nf-threshold", c.nf_threshold, "Best error above which a cell is NF");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        auto cells = run_calibration_sweep(c);
        auto out = open_output(io.csv);
        write_calibration_csv(out, cells);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"depths", c.depths},
                    {"error_probs", c.error_probs},
                    {"noise_factors", c.noise_factors},
                    {"shots", c.shots},
                    {"repetitions", c.repetitions},
                    {"fold_samples", c.fold_samples},
                    {"theta1", c.theta1},
                    {"preference_threshold", c.preference_threshold},
                    {"nf_threshold", c.nf_threshold}}}});
        return kExitOk;
    }
};

struct PartialFoldArgs {
    RunOutputs io;
    PartialFoldConfig c;
    std::string entangler = "cz";

    void add(CLI::App *sub) {
        io.add(sub, "partial_fold.csv", true);
        sub->add_option("--qubits", c.n, "Brickwork qubits");
        sub->add_option("--total-2q", c.total_2q, "Two-qubit gate counts")->delimiter(',');
        sub->add_option("--entangler", entangler, "Two-qubit gate")->check(CLI::IsMember({"cz", "cnot"}));
        sub->add_option("--p-min", c.p_min, "Lower bound of per-pair depolarizing");
        sub->add_option("--p-max", c.p_max, "Upper bound of per-pair depolarizing");
        sub->add_option("--noise-factors", c.noise_factors, "Noise factors")->delimiter(',');
        sub->add_option("--sample-counts", c.sample_counts, "Fold samples to compare")->delimiter(',');
        sub->add_option("--repetitions", c.repetitions, "Repetitions per configuration");
        sub->add_option("--shots", c.shots, "Shots per noise factor (0: exact)");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        c.kind = entangler == "cz" ? EntanglerKind::CZ : EntanglerKind::CNOT;
        auto rows = run_partial_fold_study(c);
        auto out = open_output(io.csv);
        write_partial_fold_csv(out, rows);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"total_2q", c.total_2q},
                    {"entangler", entangler},
                    {"p_min", c.p_min},
                    {"p_max", c.p_max},
                    {"noise_factors", c.noise_factors},
                    {"sample_counts", c.sample_counts},
                    {"repetitions", c.repetitions},
                    {"shots", c.shots}}}});
        return kExitOk;
    }
};

struct ShotsArgs {
    RunOutputs io;
    ShotScalingConfig c;

    void add(CLI::App *sub) {
        io.add(sub, "shot_scaling.csv", true);
        sub->add_option("--qubits", c.n, "Spin-chain qubits");
        sub->add_option("--steps", c.steps, "Spin-chain Trotter steps");
        sub->add_option("--error-probs", c.error_probs, "Two-qubit depolarizing probabilities")->delimiter(',');
        sub->add_option("--shots", c.shots, "Shot counts per noise factor (0: exact)")->delimiter(',');
        sub->add_option("--repetitions", c.repetitions, "Repetitions per shot count");
        sub->add_option("--noise-factors", c.noise_factors, "Noise factors")->delimiter(',');
        sub->add_option("--theta1", c.theta1, "Spin-chain U3 theta");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        auto result = run_shot_scaling_study(c);
        auto out = open_output(io.csv);
        write_shot_scaling_csv(out, result);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"steps", c.steps},
                    {"error_probs", c.error_probs},
                    {"shots", c.shots},
                    {"repetitions", c.repetitions},
                    {"noise_factors", c.noise_factors},
                    {"theta1", c.theta1}}}});
        return kExitOk;
    }
};

struct ReadoutArgs {
    RunOutputs io;
    ReadoutStudyConfig c;

    void add(CLI::App *sub) {
        io.add(sub, "readout.csv", true);
        sub->add_option("--qubits", c.n, "Spin-chain qubits");
        sub->add_option("--steps", c.steps, "Trotter step counts")->delimiter(',');
        sub->add_option("--depol", c.depol, "Two-qubit depolarizing probability");
        sub->add_option("--p01", c.p01, "Readout P(0|1)");
        sub->add_option("--p10", c.p10, "Readout P(1|0)");
        sub->add_option("--shots", c.shots, "Shots per noise factor");
        sub->add_option("--noise-factors", c.noise_factors, "Noise factors")->delimiter(',');
        sub->add_option("--repetitions", c.repetitions, "Repetitions per depth");
        sub->add_option("--theta1", c.theta1, "Spin-chain U3 theta");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        auto rows = run_readout_study(c);
        auto out = open_output(io.csv);
        write_readout_csv(out, rows);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"steps", c.steps},
                    {"depol", c.depol},
                    {"p01", c.p01},
                    {"p10", c.p10},
                    {"shots", c.shots},
                    {"noise_factors", c.noise_factors},
                    {"repetitions", c.repetitions},
                    {"theta1", c.theta1}}}});
        return kExitOk;
    }
};

struct TwirlArgs {
    RunOutputs io;
    TwirlStudyConfig c;

    void add(CLI::App *sub) {
        io.add(sub, "twirl.csv", true);
        sub->add_option("--qubits", c.n, "Spin-chain qubits");
        sub->add_option("--steps", c.steps, "Trotter step counts")->delimiter(',');
        sub->add_option("--depol", c.depol, "Two-qubit depolarizing probability");
        sub->add_option("--epsilon", c.epsilon, "Coherent ZZ over-rotation (rad)");
        sub->add_option("--twirl-counts", c.twirl_counts, "Twirl counts to compare (0: none)")->delimiter(',');
        sub->add_option("--shots", c.shots, "Shots per noise factor");
        sub->add_option("--noise-factors", c.noise_factors, "Noise factors")->delimiter(',');
        sub->add_option("--repetitions", c.repetitions, "Repetitions per depth");
        sub->add_option("--theta1", c.theta1, "Spin-chain U3 theta");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        auto rows = run_twirl_study(c);
        auto out = open_output(io.csv);
        write_twirl_csv(out, rows);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"steps", c.steps},
                    {"depol", c.depol},
                    {"epsilon", c.epsilon},
                    {"twirl_counts", c.twirl_counts},
                    {"shots", c.shots},
                    {"noise_factors", c.noise_factors},
                    {"repetitions", c.repetitions},
                    {"theta1", c.theta1}}}});
        return kExitOk;
    }
};

struct BenchmarkArgs {
    RunOutputs io;
    BenchmarkConfig c = BenchmarkConfig::defaults();
    std::string sets = "1,3,5;1,1.1,1.2";

    void add(CLI::App *sub) {
        io.add(sub, "benchmark.csv", true);
        sub->add_option("--qubits", c.n, "Spin-chain qubits");
        sub->add_option("--steps", c.steps, "Trotter step counts")->delimiter(',');
        sub->add_option("--depol", c.depol, "Two-qubit depolarizing probability");
        sub->add_option("--epsilon", c.epsilon, "Coherent ZZ over-rotation (rad)");
        sub->add_option("--p01", c.p01, "Readout P(0|1)");
        sub->add_option("--p10", c.p10, "Readout P(1|0)");
        sub->add_option("--shots", c.shots, "Shots per noise factor");
        sub->add_option("--twirls", c.num_twirls, "Pauli twirls per mitigated job");
        sub->add_option("--noise-factor-sets", sets, "Noise-factor sets, e.g. '1,3,5;1,1.1,1.2'");
        sub->add_option("--fold-samples", c.fold_samples, "Random fold subsets per noise factor");
    }

    int run(const CLI::App &sub) {
        c.seed = io.seed;
        c.noise_factor_sets = parse_factor_sets(sets);
        auto rows = run_benchmark(c);
        auto out = open_output(io.csv);
        write_benchmark_csv(out, rows);
        io.write_provenance(
            sub, {{"config",
                   {{"qubits", c.n},
                    {"steps", c.steps},
                    {"depol", c.depol},
                    {"epsilon", c.epsilon},
                    {"p01", c.p01},
                    {"p10", c.p10},
                    {"shots", c.shots},
                    {"twirls", c.num_twirls},
                    {"noise_factor_sets", c.noise_factor_sets},
                    {"fold_samples", c.fold_samples}}}});
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Digital zero-noise extrapolation toolkit"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "Key-value config file; [subcommand] sections, flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_version_flag("--version", kVersion);
    size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0: all cores)");
    app.require_subcommand(1);

    EstimateArgs estimate;
    CalibrateArgs calibrate;
    PartialFoldArgs partial;
    ShotsArgs shots;
    ReadoutArgs readout;
    TwirlArgs twirl;
    BenchmarkArgs benchmark;
    auto *s_est = app.add_subcommand("estimate", "Run one mitigated estimation job");
    auto *s_cal = app.add_subcommand("calibrate", "Extrapolator calibration sweep over depth and error rate");
    auto *s_pf = app.add_subcommand("study-partial-fold", "Variance of partial folding versus fold samples");
    auto *s_shots = app.add_subcommand("study-shots", "Shot-noise scaling of the zero-noise value");
    auto *s_ro = app.add_subcommand("study-readout", "Readout mitigation on top of extrapolation");
    auto *s_tw = app.add_subcommand("study-twirl", "Pauli twirling against coherent error");
    auto *s_bench = app.add_subcommand("benchmark", "Composite strategies on a conserved-charge chain");
    estimate.add(s_est);
    calibrate.add(s_cal);
    partial.add(s_pf);
    shots.add(s_shots);
    readout.add(s_ro);
    twirl.add(s_tw);
    benchmark.add(s_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    parallel_workers().store(threads);
    try {
        if (*s_est) {
            return estimate.run(*s_est);
        }
        if (*s_cal) {
            return calibrate.run(*s_cal);
        }
        if (*s_pf) {
            return partial.run(*s_pf);
        }
        if (*s_shots) {
            return shots.run(*s_shots);
        }
        if (*s_ro) {
            return readout.run(*s_ro);
        }
        if (*s_tw) {
            return twirl.run(*s_tw);
        }
        return benchmark.run(*s_bench);
    } catch (const FitError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
