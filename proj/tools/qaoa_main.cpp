// qaoa: batch front end for building, running, verifying, and auditing
// alternating-operator circuits on desk-scale instances.

#include <chrono>
#include <fstream>
#include <numeric>
#include <thread>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qaoakit/engine.hpp"
#include "qaoakit/io.hpp"
#include "qaoakit/verify.hpp"

using namespace qaoakit;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_fail = 1;
constexpr int exit_input_error = 2;
constexpr int exit_config_error = 3;

struct CommonFlags {
    std::string instance_path;
    std::string problem;
    std::string encoding = "default";
    std::string mixer = "default";
    std::string partition = "default";
    int repeats = 1;
    bool simultaneous = false;
    std::string phase_mode = "encoded";
    int p = 1;
    std::string optimizer = "grid";
    int grid_points = 32;
    long budget = 2000;
    int shots = 0;
    std::uint64_t seed = 1;
    double gamma_lo = 0.0, gamma_hi = 6.283185307179586477;
    double beta_lo = 0.0, beta_hi = 3.141592653589793238;
    std::string out_path;
    std::string format = "json";
    std::string dump_circuit;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_instance) {
    auto* opt = cmd->add_option("--instance", f.instance_path, "instance file (JSON or DIMACS)");
    if (needs_instance) opt->required();
    cmd->add_option("--problem", f.problem, "problem kind override");
    cmd->add_option("--encoding", f.encoding, "default|one-hot|binary");
    cmd->add_option("--mixer", f.mixer, "mixer kind (default per catalog)");
    cmd->add_option("--partition", f.partition, "partition strategy (default per catalog)");
    cmd->add_option("--repeats", f.repeats, "mixer repeats per application");
    cmd->add_flag("--simultaneous", f.simultaneous, "use the simultaneous (H-QAOA) mixer");
    cmd->add_option("--phase-mode", f.phase_mode, "encoded|semantic");
    cmd->add_option("-p,--levels", f.p, "QAOA level p");
    cmd->add_option("--optimizer", f.optimizer, "grid|coordinate|pattern");
    cmd->add_option("--grid-points", f.grid_points, "grid points per axis");
    cmd->add_option("--budget", f.budget, "pattern search evaluation budget");
    cmd->add_option("--shots", f.shots, "measurement shots");
    cmd->add_option("--seed", f.seed, "root seed (streams derive from it)");
    cmd->add_option("--gamma-lo", f.gamma_lo, "gamma domain lower bound");
    cmd->add_option("--gamma-hi", f.gamma_hi, "gamma domain upper bound");
    cmd->add_option("--beta-lo", f.beta_lo, "beta domain lower bound");
    cmd->add_option("--beta-hi", f.beta_hi, "beta domain upper bound");
    cmd->add_option("--out", f.out_path, "output path (default stdout)");
    cmd->add_option("--format", f.format, "json|csv");
    cmd->add_option("--dump-circuit", f.dump_circuit, "write the gate list to a file");
}

struct BuiltPipeline {
    PipelineCase pc;          // pipeline for the (possibly reduced) instance
    OptimizerConfig opt;
    ProblemInstance original;
    bool reduced = false;
    ReductionMap map;
};

BuiltPipeline build_from_flags(const CommonFlags& f, const ProblemInstance& original) {
    BuiltPipeline bp;
    bp.original = original;
    ProblemInstance inst = original;
    if (pipeline_via_reduction(inst.kind)) {
        bp.reduced = true;
        bp.map = reduce_with_map(inst);
        inst = bp.map.image;
    }
    Encoding enc = default_encoding(inst);
    if (f.encoding == "binary") {
        if (inst.kind != ProblemKind::MaxColorableSubgraph)
            throw std::runtime_error("binary encoding is only cataloged for max-colorable-subgraph");
        if ((inst.kappa & (inst.kappa - 1)) != 0)
            throw std::runtime_error("binary encoding needs kappa = 2^l");
        enc = Encoding::binary(inst.kappa, inst.graph.n);
    } else if (f.encoding != "default" && f.encoding != "one-hot") {
        throw std::runtime_error("unknown encoding: " + f.encoding);
    }

    MixerOptions mo = default_mixer_options(inst, enc);
    if (f.mixer != "default") {
        const auto mk = mixer_kind_from_name(f.mixer);
        if (!mk) throw std::runtime_error("unknown mixer kind: " + f.mixer);
        mo.kind = *mk;
    }
    if (f.partition != "default") {
        const auto ps = partition_strategy_from_name(f.partition);
        if (!ps) throw std::runtime_error("unknown partition strategy: " + f.partition);
        mo.strategy = *ps;
    }
    mo.repeats = f.repeats;
    mo.simultaneous = f.simultaneous;

    bp.pc = make_pipeline(inst.fingerprint(), inst, enc, mo);
    if (f.phase_mode == "semantic") {
        GatePrimitive g;
        g.kind = GateKind::DiagPhase;
        g.targets.resize(enc.n_qubits());
        std::iota(g.targets.begin(), g.targets.end(), 0);
        const auto semantic = bp.pc.sep.g;
        g.diag = make_diag_fn([semantic](basis_t x) { return (*semantic)(x); },
                              enc.n_qubits());
        g.angle = AngleRole::gamma(1, 1.0);
        g.section = GatePrimitive::Section::Phase;
        bp.pc.sep.encoded = {g};
    } else if (f.phase_mode != "encoded") {
        throw std::runtime_error("phase-mode must be encoded or semantic");
    }

    if (f.optimizer == "grid")
        bp.opt.strategy = OptimizerConfig::Strategy::Grid;
    else if (f.optimizer == "coordinate")
        bp.opt.strategy = OptimizerConfig::Strategy::CoordinateDescent;
    else if (f.optimizer == "pattern")
        bp.opt.strategy = OptimizerConfig::Strategy::PatternSearch;
    else
        throw std::runtime_error("unknown optimizer: " + f.optimizer);
    bp.opt.grid_points = f.grid_points;
    bp.opt.budget = f.budget;
    bp.opt.gamma_lo = f.gamma_lo;
    bp.opt.gamma_hi = f.gamma_hi;
    bp.opt.beta_lo = f.beta_lo;
    bp.opt.beta_hi = f.beta_hi;
    if (f.gamma_hi <= f.gamma_lo || f.beta_hi <= f.beta_lo)
        throw std::runtime_error("empty parameter domain");
    return bp;
}

std::string fingerprint_of(const json& config) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json config_json(const CommonFlags& f, const ProblemInstance& inst) {
    json c;
    c["problem"] = kind_name(inst.kind);
    c["sense"] = inst.sense == Sense::Maximize ? "maximize" : "minimize";
    c["instance_fingerprint"] = inst.fingerprint();
    c["encoding"] = f.encoding;
    c["mixer"] = f.mixer;
    c["partition"] = f.partition;
    c["repeats"] = f.repeats;
    c["simultaneous"] = f.simultaneous;
    c["phase_mode"] = f.phase_mode;
    c["p"] = f.p;
    c["optimizer"] = f.optimizer;
    c["grid_points"] = f.grid_points;
    c["budget"] = f.budget;
    c["shots"] = f.shots;
    c["seed"] = f.seed;
    c["gamma_domain"] = {f.gamma_lo, f.gamma_hi};
    c["beta_domain"] = {f.beta_lo, f.beta_hi};
    c["config_fingerprint"] = fingerprint_of(c);
    return c;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

int cmd_solve(const CommonFlags& f, const ProblemInstance& inst) {
    const auto t0 = std::chrono::steady_clock::now();
    BuiltPipeline bp = build_from_flags(f, inst);
    const PipelineCase& pc = bp.pc;
    const Circuit circuit =
        assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, f.p,
                      AssembleOptions{pc.plus_state, 0, 0.0});

    // Level-nested optimization: each level seeds the next, zero padded.
    std::vector<QaoaSchedule> seeds;
    OptimizeResult best;
    long total_evals = 0;
    for (int level = 1; level <= f.p; ++level) {
        const Circuit partial =
            assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, level,
                          AssembleOptions{pc.plus_state, 0, 0.0});
        best = optimize(partial, pc.inst, pc.enc, bp.opt,
                        derive_seed(f.seed, "optimize-p" + std::to_string(level)), seeds);
        total_evals += best.evaluations;
        seeds.clear();
        QaoaSchedule padded = best.schedule;
        padded.gammas.push_back(0.0);
        padded.betas.push_back(0.0);
        seeds.push_back(padded);
    }

    const AmplitudeVector state = simulate(circuit, best.schedule);
    const ExpectationResult ex = expectation(state, pc.inst, pc.enc);
    const double expectation_orig =
        bp.reduced ? bp.map.value_scale * ex.expectation + bp.map.value_offset
                   : ex.expectation;
    const auto ratio = approximation_ratio(expectation_orig, bp.original);

    json result;
    result["config"] = config_json(f, inst);
    result["schedule"]["gammas"] = best.schedule.gammas;
    result["schedule"]["betas"] = best.schedule.betas;
    result["expectation"] = expectation_orig;
    result["infeasible_mass"] = ex.infeasible_mass;
    result["evaluations"] = total_evals;
    if (bp.reduced) {
        result["solved_via"] = kind_name(pc.inst.kind);
        result["image_expectation"] = ex.expectation;
    }
    if (ratio)
        result["approximation_ratio"] = *ratio;
    else
        result["approximation_ratio"] = nullptr;

    if (f.shots > 0) {
        const auto counts = sample(state, f.shots, derive_seed(f.seed, "sample"));
        bool have_best = false;
        double best_val = 0.0;
        std::string best_cfg;
        json hist = json::array();
        for (const auto& [index, count] : counts) {
            const auto decoded = pc.enc.decode(index);
            json row;
            row["index"] = index;
            row["count"] = count;
            if (decoded) {
                const Configuration cfg =
                    bp.reduced ? bp.map.pullback(*decoded) : *decoded;
                row["configuration"] = cfg.text();
                const double v = bp.original.objective(cfg);
                row["value"] = v;
                const bool better =
                    bp.original.sense == Sense::Maximize ? v > best_val : v < best_val;
                if (bp.original.is_feasible(cfg) && (!have_best || better)) {
                    have_best = true;
                    best_val = v;
                    best_cfg = cfg.text();
                }
            }
            hist.push_back(row);
        }
        result["samples"] = hist;
        if (have_best) {
            result["best_sampled"]["configuration"] = best_cfg;
            result["best_sampled"]["value"] = best_val;
        }
    }

    if (!f.dump_circuit.empty()) write_output(f.dump_circuit, circuit.dump());
    write_output(f.out_path, result.dump(2) + "\n");
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "solve: " << std::chrono::duration<double>(t1 - t0).count() << " s, "
              << total_evals << " evaluations\n";
    return exit_ok;
}

int cmd_sweep(const CommonFlags& f, const ProblemInstance& inst) {
    BuiltPipeline bp = build_from_flags(f, inst);
    const PipelineCase& pc = bp.pc;
    const Circuit circuit = assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, f.p,
                                          AssembleOptions{pc.plus_state, 0, 0.0});
    const int axes = 2 * f.p;
    const int n = f.grid_points;
    std::uint64_t total = 1;
    for (int a = 0; a < axes; ++a) {
        total *= static_cast<std::uint64_t>(n);
        if (total > 1'000'000ull) throw std::runtime_error("sweep grid exceeds 10^6 points");
    }
    const double opt_value = brute_force_optimum(bp.original).optimum;

    std::vector<double> rows(total);
    const int workers = static_cast<int>(std::min<std::uint64_t>(worker_count(), total));
    auto run_chunk = [&](int w) {
        for (std::uint64_t i = w; i < total; i += workers) {
            QaoaSchedule s;
            s.gammas.resize(f.p);
            s.betas.resize(f.p);
            std::uint64_t rest = i;
            for (int a = axes - 1; a >= 0; --a) {
                const int step = static_cast<int>(rest % n);
                rest /= n;
                if (a < f.p)
                    s.gammas[a] = bp.opt.gamma_lo + (bp.opt.gamma_hi - bp.opt.gamma_lo) * step / n;
                else
                    s.betas[a - f.p] =
                        bp.opt.beta_lo + (bp.opt.beta_hi - bp.opt.beta_lo) * step / n;
            }
            const double ex = expectation(simulate(circuit, s), pc.inst, pc.enc).expectation;
            rows[i] = bp.reduced ? bp.map.value_scale * ex + bp.map.value_offset : ex;
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run_chunk, w);
    run_chunk(0);
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "# config=" << fingerprint_of(config_json(f, inst)) << " seed=" << f.seed << "\n";
    for (int a = 1; a <= f.p; ++a) csv << "gamma" << a << ",";
    for (int a = 1; a <= f.p; ++a) csv << "beta" << a << ",";
    csv << "expectation,ratio\n";
    for (std::uint64_t i = 0; i < total; ++i) {
        std::uint64_t rest = i;
        std::vector<double> x(axes);
        for (int a = axes - 1; a >= 0; --a) {
            const int step = static_cast<int>(rest % n);
            rest /= n;
            const double lo = a < f.p ? bp.opt.gamma_lo : bp.opt.beta_lo;
            const double hi = a < f.p ? bp.opt.gamma_hi : bp.opt.beta_hi;
            x[a] = lo + (hi - lo) * step / n;
        }
        for (int a = 0; a < axes; ++a) csv << fmt(x[a]) << ",";
        csv << fmt(rows[i]) << ",";
        if (opt_value != 0.0 && rows[i] != 0.0)
            csv << fmt(bp.original.sense == Sense::Maximize ? rows[i] / opt_value
                                                            : opt_value / rows[i]);
        csv << "\n";
    }
    write_output(f.out_path, csv.str());
    return exit_ok;
}

int cmd_resources(const CommonFlags& f, const ProblemInstance& inst) {
    BuiltPipeline bp = build_from_flags(f, inst);
    const PipelineCase& pc = bp.pc;
    const Circuit circuit = assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, f.p,
                                          AssembleOptions{pc.plus_state, 0, 0.0});
    const ResourceReport rep = resource_report(circuit);
    const auto audits = audit_resources(pc.inst, pc.enc, circuit);

    if (!f.dump_circuit.empty()) write_output(f.dump_circuit, circuit.dump());

    if (f.format == "csv") {
        std::ostringstream csv;
        csv << "# config=" << fingerprint_of(config_json(f, inst)) << " seed=" << f.seed << "\n";
        csv << "metric,value\n";
        csv << "qubits," << circuit.n_qubits << "\n";
        csv << "ancilla," << circuit.n_ancilla << "\n";
        csv << "depth," << rep.depth << "\n";
        csv << "init_gates," << rep.init_count << "\n";
        csv << "phase_gates," << rep.phase_gate_count << "\n";
        csv << "phase_depth," << rep.phase_depth << "\n";
        csv << "mixer_gates," << rep.mixer_gate_count << "\n";
        csv << "mixer_depth," << rep.mixer_depth << "\n";
        csv << "partial_mixers," << rep.partial_mixer_count << "\n";
        csv << "partial_mixer_depth," << rep.partial_mixer_depth << "\n";
        csv << "two_qubit_equivalent_estimate," << rep.two_qubit_equivalent_estimate << "\n";
        for (const auto& [key, count] : rep.counts) csv << "count_" << key << "," << count << "\n";
        for (const auto& a : audits)
            csv << "audit_" << a.check << "," << (a.status == VerificationReport::Status::Pass
                                                      ? "pass"
                                                      : a.status == VerificationReport::Status::Fail
                                                            ? "fail"
                                                            : "n/a")
                << "\n";
        write_output(f.out_path, csv.str());
    } else {
        json out;
        out["config"] = config_json(f, inst);
        out["qubits"] = circuit.n_qubits;
        out["ancilla"] = circuit.n_ancilla;
        out["depth"] = rep.depth;
        out["init_gates"] = rep.init_count;
        out["phase_gates"] = rep.phase_gate_count;
        out["phase_depth"] = rep.phase_depth;
        out["mixer_gates"] = rep.mixer_gate_count;
        out["mixer_depth"] = rep.mixer_depth;
        out["partial_mixers"] = rep.partial_mixer_count;
        out["partial_mixer_depth"] = rep.partial_mixer_depth;
        out["two_qubit_equivalent_estimate"] = rep.two_qubit_equivalent_estimate;
        out["counts"] = rep.counts;
        for (const auto& note : rep.notes) out["notes"].push_back(note);
        for (const auto& note : pc.sep.notes) out["notes"].push_back(note);
        json audit = json::array();
        for (const auto& a : audits) {
            json row;
            row["check"] = a.check;
            row["measured"] = a.measured;
            row["expected"] = a.tolerance;
            row["status"] = a.status == VerificationReport::Status::Pass ? "pass"
                            : a.status == VerificationReport::Status::Fail ? "fail"
                                                                           : "n/a";
            audit.push_back(row);
        }
        out["audit"] = audit;
        write_output(f.out_path, out.dump(2) + "\n");
    }
    return exit_ok;
}

int cmd_verify(const CommonFlags& f, const ProblemInstance* inst, const std::string& checks_csv) {
    std::vector<std::string> checks;
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) checks.push_back(item);
    }

    std::vector<VerificationReport> reports;
    std::vector<PipelineCase> cases;
    if (inst) {
        CommonFlags local = f;
        cases.push_back(build_from_flags(local, *inst).pc);
    } else {
        cases = standard_catalog();
    }

    auto wants = [&](const std::string& name) {
        return std::find(checks.begin(), checks.end(), name) != checks.end();
    };
    if (wants("feasibility")) {
        auto reps = run_feasibility_suite(cases);
        reports.insert(reports.end(), reps.begin(), reps.end());
    }
    if (wants("connectivity")) {
        auto reps = run_connectivity_suite();
        reports.insert(reports.end(), reps.begin(), reps.end());
    }
    if (wants("phase")) {
        auto reps = run_phase_suite(cases);
        reports.insert(reports.end(), reps.begin(), reps.end());
    }
    if (wants("trotter")) {
        auto reps = run_trotter_suite();
        reports.insert(reports.end(), reps.begin(), reps.end());
    }
    if (wants("resources")) {
        if (inst) {
            const PipelineCase& pc = cases.front();
            const Circuit c = assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, 1,
                                            AssembleOptions{pc.plus_state, 0, 0.0});
            auto reps = audit_resources(pc.inst, pc.enc, c);
            reports.insert(reports.end(), reps.begin(), reps.end());
        } else {
            auto reps = run_resource_suite();
            reports.insert(reports.end(), reps.begin(), reps.end());
        }
    }

    json out = json::array();
    bool any_fail = false;
    for (const auto& r : reports) {
        json row;
        row["check"] = r.check;
        row["fingerprint"] = r.fingerprint;
        row["status"] = r.status == VerificationReport::Status::Pass ? "pass"
                        : r.status == VerificationReport::Status::Fail ? "fail"
                                                                       : "inconclusive";
        row["measured"] = r.measured;
        row["tolerance"] = r.tolerance;
        row["detail"] = r.detail;
        out.push_back(row);
        if (r.status == VerificationReport::Status::Fail) any_fail = true;
        std::cerr << r.text() << "\n";
    }
    write_output(f.out_path, out.dump(2) + "\n");
    return any_fail ? exit_verify_fail : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alternating-operator ansatz toolkit"};
    app.require_subcommand(1);

    CommonFlags solve_f, verify_f, res_f, sweep_f;
    std::string checks = "feasibility,connectivity,phase,trotter,resources";

    auto* solve = app.add_subcommand("solve", "optimize parameters and sample");
    add_common(solve, solve_f, true);
    auto* verify = app.add_subcommand("verify", "run design-criteria verification suites");
    add_common(verify, verify_f, false);
    verify->add_option("--checks", checks,
                       "comma list: feasibility,connectivity,phase,trotter,resources");
    auto* resources = app.add_subcommand("resources", "gate counts, depths, formula audit");
    add_common(resources, res_f, true);
    auto* sweep = app.add_subcommand("sweep", "parameter grid sweep to CSV");
    add_common(sweep, sweep_f, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_input_error : exit_ok;
    }

    auto run = [&](const CommonFlags& f, auto&& body) -> int {
        ProblemInstance inst;
        try {
            inst = load_instance(f.instance_path, f.problem);
        } catch (const std::exception& e) {
            std::cerr << "input error: " << e.what() << "\n";
            return exit_input_error;
        }
        try {
            return body(inst);
        } catch (const std::exception& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return exit_config_error;
        }
    };

    if (solve->parsed())
        return run(solve_f, [&](const ProblemInstance& i) { return cmd_solve(solve_f, i); });
    if (resources->parsed())
        return run(res_f, [&](const ProblemInstance& i) { return cmd_resources(res_f, i); });
    if (sweep->parsed())
        return run(sweep_f, [&](const ProblemInstance& i) { return cmd_sweep(sweep_f, i); });
    if (verify->parsed()) {
        if (!verify_f.instance_path.empty()) {
            return run(verify_f, [&](const ProblemInstance& i) {
                return cmd_verify(verify_f, &i, checks);
            });
        }
        try {
            return cmd_verify(verify_f, nullptr, checks);
        } catch (const std::exception& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return exit_config_error;
        }
    }
    return exit_ok;
}
