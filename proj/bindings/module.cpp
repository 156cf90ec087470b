// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chrslab/experiments.hpp"
#include "chrslab/owpuzz.hpp"
#include "chrslab/shadows.hpp"
#include "chrslab/swapsim.hpp"
#include "chrslab/threshold.hpp"

namespace py = pybind11;
using namespace chrslab;

namespace {

RngStream make_rng(std::uint64_t seed, std::uint64_t stream) { return RngStream(seed, stream); }

ExperimentConfig config_from_kwargs(const std::string& name, const py::kwargs& kwargs) {
    ExperimentConfig c;
    c.experiment = name;
    for (auto item : kwargs) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "n") c.n = py::cast<int>(item.second);
        else if (key == "lam" || key == "lambda_") c.lambda = py::cast<int>(item.second);
        else if (key == "d") c.d = py::cast<int>(item.second);
        else if (key == "q") c.q = py::cast<int>(item.second);
        else if (key == "t") c.t = py::cast<int>(item.second);
        else if (key == "shots") c.shots = py::cast<int>(item.second);
        else if (key == "trials") c.trials = py::cast<int>(item.second);
        else if (key == "batches") c.batches = py::cast<int>(item.second);
        else if (key == "inputs") c.inputs = py::cast<int>(item.second);
        else if (key == "ell_lo") c.ell_lo = py::cast<int>(item.second);
        else if (key == "theta") c.theta = py::cast<double>(item.second);
        else if (key == "threshold") c.threshold = py::cast<double>(item.second);
        else if (key == "entangle_reference") c.entangle_reference = py::cast<bool>(item.second);
        else if (key == "exact_mode") c.exact_mode = py::cast<bool>(item.second);
        else if (key == "fixed_shots") c.fixed_shots = py::cast<bool>(item.second);
        else if (key == "variant") c.variant = py::cast<std::string>(item.second);
        else if (key == "strategy") c.strategy = py::cast<std::string>(item.second);
        else if (key == "seed") c.seed = py::cast<std::uint64_t>(item.second);
        else if (key == "memory_ceiling_gib") c.memory_ceiling_gib = py::cast<double>(item.second);
        else throw usage_error("run_experiment: unknown parameter '" + key + "'");
    }
    return c;
}

}  // namespace

PYBIND11_MODULE(_chrslab, m) {
    m.doc() = "Reference-state puzzle, classical-shadow and swap-oracle simulation lab";

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_MemoryError);

    m.def(
        "sample_haar_state",
        [](Eigen::Index d, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng = make_rng(seed, stream);
            return sample_haar_state(d, rng).amplitudes();
        },
        py::arg("d"), py::arg("seed"), py::arg("stream") = 0,
        "Haar-random state vector on C^d (normalized complex Gaussians)");

    m.def(
        "sample_haar_state_perp_zero",
        [](Eigen::Index d, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng = make_rng(seed, stream);
            return sample_haar_state_perp_zero(d, rng).amplitudes();
        },
        py::arg("d"), py::arg("seed"), py::arg("stream") = 0,
        "Haar-random state on the subspace orthogonal to the first basis vector");

    m.def(
        "trace_distance", [](const Mat& a, const Mat& b) { return trace_distance(a, b); },
        py::arg("rho"), py::arg("sigma"));
    m.def(
        "fidelity",
        [](const Mat& a, const Mat& b) { return fidelity(DensityMatrix(a), DensityMatrix(b)); },
        py::arg("rho"), py::arg("sigma"));
    m.def(
        "kron", [](const Mat& a, const Mat& b) { return tensor_product(a, b); }, py::arg("a"),
        py::arg("b"));
    m.def(
        "partial_trace",
        [](const Mat& rho, const std::vector<Eigen::Index>& dims, const std::vector<int>& keep) {
            return partial_trace(DensityMatrix(rho), dims, keep).matrix();
        },
        py::arg("rho"), py::arg("dims"), py::arg("keep"));
    m.def("pauli_string", &pauli_string, py::arg("n"), py::arg("spec"));

    m.def(
        "swap_oracle_unitary", [](const Vec& psi) { return swap_oracle_unitary(PureState(psi)); },
        py::arg("psi"));
    m.def("sym_projector_matrix", &sym_projector_matrix, py::arg("d"), py::arg("copies"));

    py::class_<SwapSimulatorSession>(m, "SwapSimulatorSession",
                                     "Simulates swap-oracle queries from reservoir copies")
        .def(py::init([](const Vec& psi, int q, int budget) {
                 return SwapSimulatorSession(PureState(psi), q, budget);
             }),
             py::arg("psi"), py::arg("q"), py::arg("query_budget") = 1)
        .def(
            "query",
            [](SwapSimulatorSession& s, const Mat& rho, Eigen::Index ref_dim) {
                return s.query(DensityMatrix(rho), ref_dim).matrix();
            },
            py::arg("rho"), py::arg("ref_dim") = 1)
        .def_property_readonly("q", &SwapSimulatorSession::q)
        .def_property_readonly("reservoir_remaining", &SwapSimulatorSession::reservoir_remaining)
        .def_property_readonly("copies_consumed", &SwapSimulatorSession::copies_consumed);

    py::class_<ClassicalShadow>(m, "ClassicalShadow")
        .def_property_readonly("qubits", &ClassicalShadow::qubits)
        .def_property_readonly("n_shots",
                               [](const ClassicalShadow& s) { return s.shots().size(); })
        .def("to_json", [](const ClassicalShadow& s) { return s.to_json().dump(); })
        .def_static("from_json", [](const std::string& text) {
            return ClassicalShadow::from_json(nlohmann::json::parse(text));
        });

    m.def(
        "shadow_gen",
        [](const Vec& psi, int shots, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng = make_rng(seed, stream);
            return shadow_gen(PureState(psi), shots, rng);
        },
        py::arg("psi"), py::arg("shots"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "shadow_estimate_fidelity",
        [](const ClassicalShadow& s, const Vec& w, int batches) {
            return shadow_estimate_fidelity(s, w, batches);
        },
        py::arg("shadow"), py::arg("target"), py::arg("batches") = 1);
    m.def("shadow_copies_for", &shadow_copies_for, py::arg("eps"), py::arg("delta"),
          py::arg("n_observables"));

    m.def(
        "sample_uniform_clifford",
        [](int n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng = make_rng(seed, stream);
            CliffordElement c = sample_uniform_clifford(n, rng);
            py::dict out;
            out["gates"] = c.gate_string();
            out["unitary"] = c.unitary();
            return out;
        },
        py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
        "Exactly uniform Clifford element as a gate string plus its unitary");

    m.def(
        "run_experiment",
        [](const std::string& name, const py::kwargs& kwargs) {
            ExperimentReport r = run_experiment(config_from_kwargs(name, kwargs));
            py::dict out;
            for (const auto& [k, v] : r.metrics) out[k.c_str()] = round_sig12(v);
            return out;
        },
        py::arg("name"), "Runs a named experiment and returns its metrics map");

    m.def("experiment_names", [] { return experiment_names(); });
}
