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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dzne/circuit.h"
#include "dzne/density_matrix.h"
#include "dzne/estimator.h"
#include "dzne/extrapolate.h"
#include "dzne/folding.h"
#include "dzne/readout.h"
#include "dzne/version.h"

namespace py = pybind11;
using namespace dzne;

namespace {

py::object to_python(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<NoisePoint> to_points(
    const std::vector<double> &lambdas, const std::vector<double> &means, const std::vector<double> &std_errors) {
    if (lambdas.size() != means.size() || (!std_errors.empty() && std_errors.size() != lambdas.size())) {
        throw std::invalid_argument("lambdas, means and std_errors must have equal lengths");
    }
    std::vector<NoisePoint> pts;
    for (size_t i = 0; i < lambdas.size(); i++) {
        pts.push_back({lambdas[i], means[i], std_errors.empty() ? 0 : std_errors[i], 0});
    }
    return pts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Digital zero-noise extrapolation: folding, twirling, readout mitigation and fits.";
    m.attr("__version__") = kVersion;

    py::register_exception<FitError>(m, "FitError", PyExc_ArithmeticError);

    py::class_<Circuit>(m, "Circuit")
        .def_static(
            "from_text", [](const std::string &text) { return circuit_from_text(text); }, py::arg("text"))
        .def("to_text", [](const Circuit &c) { return to_text(c); })
        .def_property_readonly("num_qubits", &Circuit::num_qubits)
        .def("__len__", &Circuit::size)
        .def("count_two_qubit_gates", &Circuit::count_two_qubit_gates)
        .def("fingerprint", &Circuit::fingerprint)
        .def("dagger", [](const Circuit &c) { return dagger(c); })
        .def("__eq__", [](const Circuit &a, const Circuit &b) { return a == b; })
        .def("__repr__", [](const Circuit &c) {
            return "<Circuit " + std::to_string(c.num_qubits()) + " qubits, " + std::to_string(c.size()) + " gates>";
        });

    m.def("spin_chain", &build_spin_chain, py::arg("n"), py::arg("steps"), py::arg("theta1"), py::arg("theta2") = 0.0,
          py::arg("theta3") = 0.0, py::arg("disorder_seed") = 0);
    m.def(
        "brickwork",
        [](uint32_t n, uint32_t total_2q, const std::string &kind) {
            if (kind != "cz" && kind != "cnot") {
                throw std::invalid_argument("kind must be 'cz' or 'cnot'");
            }
            return build_brickwork(n, total_2q, kind == "cz" ? EntanglerKind::CZ : EntanglerKind::CNOT);
        },
        py::arg("n"), py::arg("total_2q"), py::arg("kind") = "cz");

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](double depol_2q, double depol_1q, double coherent_epsilon) {
                 NoiseModel n;
                 n.depol_2q_default = depol_2q;
                 n.depol_1q = depol_1q;
                 n.coherent_epsilon = coherent_epsilon;
                 return n;
             }),
             py::arg("depol_2q") = 0.0, py::arg("depol_1q") = 0.0, py::arg("coherent_epsilon") = 0.0)
        .def_readwrite("depol_2q", &NoiseModel::depol_2q_default)
        .def_readwrite("depol_1q", &NoiseModel::depol_1q)
        .def_readwrite("coherent_epsilon", &NoiseModel::coherent_epsilon)
        .def("set_pair_depol", &NoiseModel::set_depol_2q, py::arg("a"), py::arg("b"), py::arg("p"))
        .def("set_uniform_readout", &NoiseModel::set_uniform_readout, py::arg("n"), py::arg("p01"), py::arg("p10"));

    m.def(
        "exact_expectation",
        [](const Circuit &c, const std::string &obs, const NoiseModel &noise) {
            return exact_expectation(simulate(c, noise), PauliString::parse(obs));
        },
        py::arg("circuit"), py::arg("observable"), py::arg("noise") = NoiseModel{});

    m.def(
        "plan_fold",
        [](const Circuit &c, double lambda, const std::string &scope, bool all_gates, uint64_t seed) {
            if (scope != "local" && scope != "global") {
                throw std::invalid_argument("scope must be 'local' or 'global'");
            }
            return to_python(to_json(plan_fold(
                c, lambda, scope == "local" ? FoldScope::Local : FoldScope::Global,
                all_gates ? Foldable::AllGates : Foldable::TwoQubitOnly, seed)));
        },
        py::arg("circuit"), py::arg("noise_factor"), py::arg("scope") = "local", py::arg("all_gates") = false,
        py::arg("seed") = 0);
    m.def(
        "apply_fold",
        [](const Circuit &c, py::object plan) {
            std::string text = py::str(py::module_::import("json").attr("dumps")(plan));
            return apply_fold(c, folding_plan_from_json(nlohmann::json::parse(text)));
        },
        py::arg("circuit"), py::arg("plan"));

    m.def(
        "fit",
        [](const std::string &model, const std::vector<double> &lambdas, const std::vector<double> &means,
           const std::vector<double> &std_errors) {
            auto pts = to_points(lambdas, means, std_errors);
            return to_python(to_json(fit_model(pts, ExtrapolationModel::parse(model))));
        },
        py::arg("model"), py::arg("lambdas"), py::arg("means"), py::arg("std_errors") = std::vector<double>{});

    m.def(
        "estimate",
        [](const Circuit &c, const std::vector<std::string> &observables, const NoiseModel &noise,
           const std::vector<double> &noise_factors, uint64_t shots, size_t fold_samples, size_t twirls,
           bool readout_mitigation, const std::vector<std::string> &models, uint64_t seed) {
            EstimatorJob job;
            job.circuit = c;
            for (const auto &o : observables) {
                job.observables.push_back(PauliString::parse(o));
            }
            job.noise_factors = noise_factors;
            job.total_shots_per_factor = shots;
            job.fold_samples = fold_samples;
            job.num_twirls = twirls;
            job.readout_mitigation = readout_mitigation;
            job.models.clear();
            for (const auto &name : models) {
                job.models.push_back(ExtrapolationModel::parse(name));
            }
            job.seed = seed;
            MitigatedResult r;
            {
                py::gil_scoped_release release;
                r = run_mitigated_estimator(job, noise);
            }
            nlohmann::json out = nlohmann::json::array();
            for (const auto &o : r.observables) {
                nlohmann::json fits = nlohmann::json::array();
                for (const auto &f : o.fits) {
                    fits.push_back(to_json(f));
                }
                nlohmann::json pts = nlohmann::json::array();
                for (const auto &p : o.points) {
                    pts.push_back({{"lambda_eff", p.lambda_eff}, {"mean", p.mean}, {"stderr", p.std_error}});
                }
                out.push_back({{"observable", o.observable.str()},
                               {"points", pts},
                               {"fits", fits},
                               {"value", o.chosen_value},
                               {"stderr", o.chosen_std_error},
                               {"model", o.chosen_model}});
            }
            return py::make_tuple(to_python(out), to_python(r.provenance));
        },
        py::arg("circuit"), py::arg("observables"), py::arg("noise"), py::arg("noise_factors") = std::vector<double>{1, 3, 5},
        py::arg("shots") = 8000, py::arg("fold_samples") = 1, py::arg("twirls") = 0,
        py::arg("readout_mitigation") = false, py::arg("models") = std::vector<std::string>{"linear"},
        py::arg("seed") = 0);
}
