// Python bindings for the toolkit's main operations: instance loading,
// pipeline assembly, exact simulation, optimization, sampling, resource
// reporting, and the verification suites.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qaoakit/engine.hpp"
#include "qaoakit/io.hpp"
#include "qaoakit/verify.hpp"

namespace py = pybind11;
using namespace qaoakit;

namespace {

QaoaSchedule make_schedule(const std::vector<double>& gammas, const std::vector<double>& betas) {
    if (gammas.size() != betas.size())
        throw std::invalid_argument("gammas and betas must have equal length");
    QaoaSchedule s;
    s.gammas = gammas;
    s.betas = betas;
    return s;
}

struct PyPipeline {
    ProblemInstance original;
    bool reduced = false;
    ReductionMap map;
    PipelineCase pc;
    int p = 1;
    Circuit circuit;

    PyPipeline(const ProblemInstance& inst, int p_, const std::string& mixer,
               const std::string& partition, int repeats, bool simultaneous,
               const std::string& encoding)
        : original(inst), p(p_) {
        ProblemInstance target = inst;
        if (pipeline_via_reduction(inst.kind)) {
            reduced = true;
            map = reduce_with_map(inst);
            target = map.image;
        }
        Encoding enc = default_encoding(target);
        if (encoding == "binary") {
            enc = Encoding::binary(target.kappa, target.graph.n);
        } else if (encoding != "default" && encoding != "one-hot") {
            throw std::invalid_argument("encoding must be default, one-hot, or binary");
        }
        MixerOptions mo = default_mixer_options(target, enc);
        if (mixer != "default") {
            const auto mk = mixer_kind_from_name(mixer);
            if (!mk) throw std::invalid_argument("unknown mixer kind: " + mixer);
            mo.kind = *mk;
        }
        if (partition != "default") {
            const auto ps = partition_strategy_from_name(partition);
            if (!ps) throw std::invalid_argument("unknown partition strategy: " + partition);
            mo.strategy = *ps;
        }
        mo.repeats = repeats;
        mo.simultaneous = simultaneous;
        pc = make_pipeline(target.fingerprint(), target, enc, mo);
        circuit = assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, p,
                                AssembleOptions{pc.plus_state, 0, 0.0});
    }

    double to_original(double image_value) const {
        return reduced ? map.value_scale * image_value + map.value_offset : image_value;
    }

    std::vector<cplx> statevector(const std::vector<double>& gammas,
                                  const std::vector<double>& betas) const {
        return simulate(circuit, make_schedule(gammas, betas)).amps;
    }

    py::dict expectation_at(const std::vector<double>& gammas,
                            const std::vector<double>& betas) const {
        const auto ex =
            expectation(simulate(circuit, make_schedule(gammas, betas)), pc.inst, pc.enc);
        py::dict out;
        out["expectation"] = to_original(ex.expectation);
        out["infeasible_mass"] = ex.infeasible_mass;
        return out;
    }

    py::dict run_optimize(const std::string& strategy, int grid_points, long budget,
                          std::uint64_t seed) const {
        OptimizerConfig cfg;
        if (strategy == "grid")
            cfg.strategy = OptimizerConfig::Strategy::Grid;
        else if (strategy == "coordinate")
            cfg.strategy = OptimizerConfig::Strategy::CoordinateDescent;
        else if (strategy == "pattern")
            cfg.strategy = OptimizerConfig::Strategy::PatternSearch;
        else
            throw std::invalid_argument("strategy must be grid, coordinate, or pattern");
        cfg.grid_points = grid_points;
        cfg.budget = budget;
        const auto res = optimize(circuit, pc.inst, pc.enc, cfg, seed);
        py::dict out;
        out["gammas"] = res.schedule.gammas;
        out["betas"] = res.schedule.betas;
        out["expectation"] = to_original(res.expectation);
        out["evaluations"] = res.evaluations;
        return out;
    }

    py::dict draw_samples(const std::vector<double>& gammas, const std::vector<double>& betas,
                          int shots, std::uint64_t seed) const {
        const AmplitudeVector state = simulate(circuit, make_schedule(gammas, betas));
        py::dict out;
        for (const auto& [index, count] : sample(state, shots, seed)) {
            const auto decoded = pc.enc.decode(index);
            if (decoded) {
                const Configuration cfg = reduced ? map.pullback(*decoded) : *decoded;
                out[py::str(cfg.text())] = count;
            } else {
                out[py::str("raw:" + std::to_string(index))] = count;
            }
        }
        return out;
    }

    py::dict resources() const {
        const ResourceReport rep = resource_report(circuit);
        py::dict out;
        out["qubits"] = circuit.n_qubits;
        out["ancilla"] = circuit.n_ancilla;
        out["depth"] = rep.depth;
        out["phase_gates"] = rep.phase_gate_count;
        out["phase_depth"] = rep.phase_depth;
        out["mixer_gates"] = rep.mixer_gate_count;
        out["mixer_depth"] = rep.mixer_depth;
        out["partial_mixers"] = rep.partial_mixer_count;
        out["partial_mixer_depth"] = rep.partial_mixer_depth;
        out["two_qubit_equivalent_estimate"] = rep.two_qubit_equivalent_estimate;
        py::dict counts;
        for (const auto& [key, value] : rep.counts) counts[py::str(key)] = value;
        out["counts"] = counts;
        return out;
    }

    std::string dump() const { return circuit.dump(); }
};

py::dict report_to_dict(const VerificationReport& rep) {
    py::dict out;
    out["check"] = rep.check;
    out["fingerprint"] = rep.fingerprint;
    out["status"] = rep.status == VerificationReport::Status::Pass ? "pass"
                    : rep.status == VerificationReport::Status::Fail ? "fail"
                                                                     : "inconclusive";
    out["measured"] = rep.measured;
    out["tolerance"] = rep.tolerance;
    out["detail"] = rep.detail;
    return out;
}

}  // namespace

PYBIND11_MODULE(qaoakit, m) {
    m.doc() = "alternating-operator ansatz toolkit: encodings, mixers, phase separators, "
              "exact simulation, and design-criteria verification";

    py::class_<ProblemInstance>(m, "Instance")
        .def_static("from_json", [](const std::string& text) {
            return parse_instance_text(text, "");
        })
        .def_static("from_file", [](const std::string& path) { return load_instance(path, ""); })
        .def_property_readonly("kind",
                               [](const ProblemInstance& inst) { return kind_name(inst.kind); })
        .def_property_readonly("sense",
                               [](const ProblemInstance& inst) {
                                   return inst.sense == Sense::Maximize ? "maximize" : "minimize";
                               })
        .def_property_readonly("fingerprint",
                               [](const ProblemInstance& inst) { return inst.fingerprint(); })
        .def("to_json", &instance_to_json)
        .def("brute_force",
             [](const ProblemInstance& inst) {
                 const auto res = brute_force_optimum(inst);
                 py::list argopt;
                 for (const auto& cfg : res.argopt) argopt.append(cfg.text());
                 return py::make_tuple(res.optimum, argopt);
             })
        .def("objective",
             [](const ProblemInstance& inst, const std::vector<int>& values,
                const std::vector<int>& slack) {
                 Configuration cfg = inst.config(0);
                 cfg.values = values;
                 if (!slack.empty()) cfg.slack = slack;
                 return inst.objective(cfg);
             },
             py::arg("values"), py::arg("slack") = std::vector<int>{})
        .def("is_feasible",
             [](const ProblemInstance& inst, const std::vector<int>& values,
                const std::vector<int>& slack) {
                 Configuration cfg = inst.config(0);
                 cfg.values = values;
                 if (!slack.empty()) cfg.slack = slack;
                 return inst.is_feasible(cfg);
             },
             py::arg("values"), py::arg("slack") = std::vector<int>{});

    py::class_<PyPipeline>(m, "Pipeline")
        .def(py::init<const ProblemInstance&, int, const std::string&, const std::string&, int,
                      bool, const std::string&>(),
             py::arg("instance"), py::arg("p") = 1, py::arg("mixer") = "default",
             py::arg("partition") = "default", py::arg("repeats") = 1,
             py::arg("simultaneous") = false, py::arg("encoding") = "default")
        .def_property_readonly("n_qubits", [](const PyPipeline& p) { return p.circuit.n_qubits; })
        .def_property_readonly("n_ancilla",
                               [](const PyPipeline& p) { return p.circuit.n_ancilla; })
        .def_property_readonly("p", [](const PyPipeline& p) { return p.p; })
        .def("statevector", &PyPipeline::statevector, py::arg("gammas"), py::arg("betas"))
        .def("expectation", &PyPipeline::expectation_at, py::arg("gammas"), py::arg("betas"))
        .def("optimize", &PyPipeline::run_optimize, py::arg("strategy") = "grid",
             py::arg("grid_points") = 32, py::arg("budget") = 2000, py::arg("seed") = 1)
        .def("sample", &PyPipeline::draw_samples, py::arg("gammas"), py::arg("betas"),
             py::arg("shots"), py::arg("seed") = 1)
        .def("resources", &PyPipeline::resources)
        .def("dump", &PyPipeline::dump);

    m.def("verify",
          [](const std::vector<std::string>& checks) {
              py::list out;
              const auto cases = standard_catalog();
              for (const std::string& check : checks) {
                  std::vector<VerificationReport> reps;
                  if (check == "feasibility")
                      reps = run_feasibility_suite(cases);
                  else if (check == "connectivity")
                      reps = run_connectivity_suite();
                  else if (check == "phase")
                      reps = run_phase_suite(cases);
                  else if (check == "trotter")
                      reps = run_trotter_suite();
                  else if (check == "resources")
                      reps = run_resource_suite();
                  else
                      throw std::invalid_argument("unknown check: " + check);
                  for (const auto& rep : reps) out.append(report_to_dict(rep));
              }
              return out;
          },
          py::arg("checks") =
              std::vector<std::string>{"feasibility", "connectivity", "phase", "trotter",
                                       "resources"});

    m.def("edge_coloring_complete_graph", &edge_coloring_complete_graph, py::arg("n"));
    m.def("derive_seed", &derive_seed, py::arg("root"), py::arg("stream"));
}
