#include "qaoakit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

namespace {

constexpr double pi = std::numbers::pi;

std::string status_name(VerificationReport::Status s) {
    switch (s) {
        case VerificationReport::Status::Pass: return "pass";
        case VerificationReport::Status::Fail: return "fail";
        case VerificationReport::Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace

std::string VerificationReport::text() const {
    std::ostringstream os;
    os.precision(12);
    os << check << " [" << fingerprint << "] " << status_name(status)
       << " measured=" << measured << " tol=" << tolerance;
    if (!detail.empty()) os << " (" << detail << ")";
    return os.str();
}

std::vector<double> criterion_beta_samples(std::uint64_t seed, int extra) {
    std::vector<double> betas = {0.1, 0.3, pi / 4, 1.0, 1.5};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(1e-3, pi / 2 - 1e-3);
    for (int i = 0; i < extra; ++i) betas.push_back(uni(rng));
    return betas;
}

// ------------------------------------------------- dense gate oracle ------

namespace {

DenseMatrix local_matrix(const GatePrimitive& g, double theta) {
    switch (g.kind) {
        case GateKind::PauliX: {
            DenseMatrix m(2);
            m(0, 1) = m(1, 0) = 1.0;
            return m;
        }
        case GateKind::Hadamard: {
            DenseMatrix m(2);
            const double r = 1.0 / std::sqrt(2.0);
            m(0, 0) = m(0, 1) = m(1, 0) = r;
            m(1, 1) = -r;
            return m;
        }
        case GateKind::RX: {
            DenseMatrix h(2);
            h(0, 1) = h(1, 0) = 1.0;
            return expm_hermitian(h, theta);
        }
        case GateKind::RZ:
        case GateKind::MultiZ: {
            const std::size_t k = g.targets.size();
            DenseMatrix h(std::size_t{1} << k);
            for (std::size_t x = 0; x < h.dim; ++x) {
                int parity = 0;
                for (std::size_t b = 0; b < k; ++b) parity ^= static_cast<int>((x >> b) & 1);
                h(x, x) = parity ? -1.0 : 1.0;
            }
            return expm_hermitian(h, theta);
        }
        case GateKind::XY: {
            DenseMatrix h(4);
            h(0b01, 0b10) = h(0b10, 0b01) = 2.0;  // XX + YY restricted
            return expm_hermitian(h, theta);
        }
        case GateKind::TwoLevel: {
            const std::size_t k = g.targets.size();
            DenseMatrix h(std::size_t{1} << k);
            h(g.label_a, g.label_b) = 1.0;
            h(g.label_b, g.label_a) = 1.0;
            return expm_hermitian(h, theta);
        }
        case GateKind::SwapExp: {
            DenseMatrix h(4);  // -SWAP, so exp(-i theta H) = exp(+i theta SWAP)
            h(0, 0) = h(3, 3) = -1.0;
            h(1, 2) = h(2, 1) = -1.0;
            return expm_hermitian(h, theta);
        }
        case GateKind::CPhase: {
            DenseMatrix m(1);
            m(0, 0) = std::polar(1.0, -theta);
            return m;
        }
        case GateKind::DiagPhase: {
            const std::size_t k = g.targets.size();
            DenseMatrix m(std::size_t{1} << k);
            for (std::size_t x = 0; x < m.dim; ++x)
                m(x, x) = std::polar(1.0, -theta * (*g.diag)(x));
            return m;
        }
        case GateKind::Expm:
            throw std::invalid_argument("Expm handled at full width");
        case GateKind::Dense:
            return *g.dense;
    }
    throw std::logic_error("unhandled gate kind");
}

}  // namespace

DenseMatrix dense_gate_matrix(const GatePrimitive& gate, int n_qubits,
                              const QaoaSchedule& angles) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (dim > dense_dim_cap) throw std::invalid_argument("dense_gate_matrix: too many qubits");
    const double theta = gate.angle.resolve(angles);

    if (gate.kind == GateKind::Expm) {
        DenseMatrix h = terms_to_dense(*gate.ham, n_qubits);
        return expm_hermitian(h, theta);
    }

    const DenseMatrix local = local_matrix(gate, theta);
    DenseMatrix full(dim);
    const std::size_t k = gate.targets.size();
    for (basis_t col = 0; col < dim; ++col) {
        bool ctrl = true;
        for (const auto& [q, v] : gate.controls) {
            if (static_cast<int>((col >> q) & 1) != v) {
                ctrl = false;
                break;
            }
        }
        if (!ctrl) {
            full(col, col) = 1.0;
            continue;
        }
        basis_t sub = 0;
        for (std::size_t b = 0; b < k; ++b) {
            if ((col >> gate.targets[b]) & 1) sub |= basis_t{1} << b;
        }
        basis_t mask = 0;
        for (std::size_t b = 0; b < k; ++b) mask |= basis_t{1} << gate.targets[b];
        for (basis_t row_sub = 0; row_sub < local.dim; ++row_sub) {
            const cplx v = local(row_sub, sub);
            if (v == cplx{0.0, 0.0}) continue;
            basis_t row = col & ~mask;
            for (std::size_t b = 0; b < k; ++b) {
                if ((row_sub >> b) & 1) row |= basis_t{1} << gate.targets[b];
            }
            full(row, col) = v;
        }
    }
    return full;
}

DenseMatrix dense_circuit_matrix(const std::vector<GatePrimitive>& gates, int n_qubits,
                                 const QaoaSchedule& angles) {
    DenseMatrix u = DenseMatrix::identity(std::size_t{1} << n_qubits);
    for (const auto& g : gates) u = matmul(dense_gate_matrix(g, n_qubits, angles), u);
    return u;
}

// ----------------------------------------------------------- criteria ----

VerificationReport check_feasibility_preservation(const MixerRealization& mixer,
                                                  const std::vector<basis_t>& feasible,
                                                  const std::vector<double>& betas) {
    VerificationReport rep;
    rep.check = "feasibility-preservation";
    rep.tolerance = 1e-10;
    const int width = mixer.n_qubits + mixer.n_ancilla;
    if (width > 24) throw std::invalid_argument("feasibility check: register too large");
    std::vector<char> in_f(std::size_t{1} << width, 0);
    for (basis_t x : feasible) in_f[x] = 1;

    double worst = 0.0;
    for (double beta : betas) {
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {beta};
        for (basis_t x : feasible) {
            AmplitudeVector state = AmplitudeVector::basis_state(width, x);
            for (const auto& g : mixer.gates) apply_gate(state, g, sched);
            double leak = 0.0;
            for (basis_t y = 0; y < state.dim(); ++y) {
                if (!in_f[y]) leak += std::norm(state.amps[y]);
            }
            worst = std::max(worst, leak);
        }
    }
    rep.measured = worst;
    rep.status = worst < rep.tolerance ? VerificationReport::Status::Pass
                                       : VerificationReport::Status::Fail;
    return rep;
}

namespace {

// Mixer unitary restricted to the feasible set (columns = images of basis
// states, rows projected onto the set).
std::vector<std::vector<cplx>> restricted_unitary(const MixerRealization& mixer,
                                                  const std::vector<basis_t>& feasible,
                                                  double beta) {
    const int width = mixer.n_qubits + mixer.n_ancilla;
    const std::size_t f = feasible.size();
    std::vector<std::vector<cplx>> u(f, std::vector<cplx>(f, cplx{0.0, 0.0}));
    QaoaSchedule sched;
    sched.gammas = {0.0};
    sched.betas = {beta};
    for (std::size_t col = 0; col < f; ++col) {
        AmplitudeVector state = AmplitudeVector::basis_state(width, feasible[col]);
        for (const auto& g : mixer.gates) apply_gate(state, g, sched);
        for (std::size_t row = 0; row < f; ++row) u[row][col] = state.amps[feasible[row]];
    }
    return u;
}

std::vector<std::vector<cplx>> matmul_small(const std::vector<std::vector<cplx>>& a,
                                            const std::vector<std::vector<cplx>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<cplx>> c(n, std::vector<cplx>(n, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx v = a[i][k];
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += v * b[k][j];
        }
    return c;
}

}  // namespace

VerificationReport check_connectivity(const MixerRealization& mixer,
                                      const std::vector<basis_t>& feasible, double beta_star,
                                      int r_max) {
    VerificationReport rep;
    rep.check = "connectivity";
    rep.tolerance = 1e-8;
    const auto u = restricted_unitary(mixer, feasible, beta_star);
    auto power = u;
    double best_min = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        if (r > 1) power = matmul_small(power, u);
        double min_abs = std::numeric_limits<double>::infinity();
        for (const auto& row : power)
            for (const cplx& v : row) min_abs = std::min(min_abs, std::abs(v));
        best_min = std::max(best_min, min_abs);
        if (min_abs > rep.tolerance) {
            rep.status = VerificationReport::Status::Pass;
            rep.measured = r;
            rep.detail = "min amplitude " + std::to_string(min_abs);
            return rep;
        }
    }
    rep.measured = r_max;
    rep.detail = "best min amplitude " + std::to_string(best_min);
    rep.status = best_min > 0.0 ? VerificationReport::Status::Inconclusive
                                : VerificationReport::Status::Fail;
    return rep;
}

VerificationReport check_phase_separator(const PhaseSeparator& sep, const ProblemInstance& inst,
                                         const Encoding& enc) {
    VerificationReport rep;
    rep.check = "phase-separator";
    rep.fingerprint = inst.fingerprint();
    rep.tolerance = 1e-9;
    const auto feasible = enumerate_feasible(inst, enc);
    const auto& gates = sep.encoded;
    const int width = enc.n_qubits();
    if (width > 24) throw std::invalid_argument("phase check: register too large");

    // Pick gamma small enough that every phase stays inside (-pi, pi).
    double span = 1.0;
    for (basis_t x : feasible) {
        const auto cfg = enc.decode(x);
        span = std::max(span, std::abs(sep.affine.scale * inst.objective(*cfg)) +
                                  std::abs(sep.affine.offset));
    }
    const double gamma = 1.0 / (4.0 * span);
    QaoaSchedule sched;
    sched.gammas = {gamma};
    sched.betas = {0.0};

    // Diagonality + phase collection on the feasible subspace.
    std::vector<double> fvals, phases;
    for (basis_t x : feasible) {
        AmplitudeVector state = AmplitudeVector::basis_state(width, x);
        for (const auto& g : gates) apply_gate(state, g, sched);
        const cplx amp = state.amps[x];
        if (std::abs(std::abs(amp) - 1.0) > 1e-9) {
            rep.status = VerificationReport::Status::Fail;
            rep.detail = "separator not diagonal on the feasible subspace";
            rep.measured = std::abs(amp);
            return rep;
        }
        const auto cfg = enc.decode(x);
        fvals.push_back(inst.objective(*cfg));
        phases.push_back(std::arg(amp) / (-gamma));
    }

    // Least squares phase = a f + b.
    const std::size_t n = fvals.size();
    double sf = 0, sp = 0, sff = 0, sfp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sf += fvals[i];
        sp += phases[i];
        sff += fvals[i] * fvals[i];
        sfp += fvals[i] * phases[i];
    }
    const double det = n * sff - sf * sf;
    if (std::abs(det) < 1e-12) {  // constant objective: any scale fits
        rep.status = VerificationReport::Status::Pass;
        rep.detail = "constant objective; affine check degenerate";
        rep.measured = 0.0;
        return rep;
    }
    const double a = (n * sfp - sf * sp) / det;
    const double b = (sp * sff - sf * sfp) / det;
    const double err = std::max(std::abs(a - sep.affine.scale),
                                std::abs(b - sep.affine.offset));
    rep.measured = a;
    rep.status = err < rep.tolerance ? VerificationReport::Status::Pass
                                     : VerificationReport::Status::Fail;
    std::ostringstream os;
    os.precision(12);
    os << "recovered scale " << a << " offset " << b << " declared " << sep.affine.scale << " "
       << sep.affine.offset;
    rep.detail = os.str();
    return rep;
}

VerificationReport check_trotter_order(const MixerSpec& spec) {
    VerificationReport rep;
    rep.check = "trotter-order";
    rep.tolerance = 1.9;
    const int width = spec.n_main_qubits;
    if ((std::size_t{1} << width) > 4096)
        throw std::invalid_argument("trotter check: register too large");

    const MixerRealization part = realize_partitioned(spec);
    const int total = width + part.n_ancilla;

    std::vector<double> logs_beta, logs_err;
    bool all_tiny = true;
    double beta = 0.4;
    for (int k = 0; k < 6; ++k, beta /= 2) {
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {beta};
        DenseMatrix u_part = dense_circuit_matrix(part.gates, total, sched);
        DenseMatrix u_sim_main = realize_simultaneous(spec, beta);
        // Embed the simultaneous unitary over the ancilla-extended register.
        DenseMatrix u_sim(std::size_t{1} << total);
        const std::size_t main_dim = std::size_t{1} << width;
        for (std::size_t anc = 0; anc < (std::size_t{1} << (total - width)); ++anc) {
            for (std::size_t i = 0; i < main_dim; ++i)
                for (std::size_t j = 0; j < main_dim; ++j)
                    u_sim((anc << width) | i, (anc << width) | j) = u_sim_main(i, j);
        }
        const double err = frobenius_diff(u_part, u_sim);
        if (err > 1e-12) all_tiny = false;
        if (err > 1e-14) {
            logs_beta.push_back(std::log(beta));
            logs_err.push_back(std::log(err));
        }
    }
    if (all_tiny) {
        rep.status = VerificationReport::Status::Pass;
        rep.measured = 0.0;
        rep.detail = "commuting partition: exact match";
        return rep;
    }
    if (logs_beta.size() < 3) {
        rep.status = VerificationReport::Status::Inconclusive;
        rep.detail = "too few usable error samples";
        return rep;
    }
    const std::size_t n = logs_beta.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += logs_beta[i];
        sy += logs_err[i];
        sxx += logs_beta[i] * logs_beta[i];
        sxy += logs_beta[i] * logs_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.measured = slope;
    rep.status = slope >= rep.tolerance ? VerificationReport::Status::Pass
                                        : VerificationReport::Status::Fail;
    rep.detail = "log-log slope over beta halvings";
    return rep;
}

// ------------------------------------------------------ resource audit ----

namespace {

VerificationReport count_report(const std::string& what, const std::string& fp, long got,
                                long want) {
    VerificationReport rep;
    rep.check = "resources:" + what;
    rep.fingerprint = fp;
    rep.measured = static_cast<double>(got);
    rep.tolerance = static_cast<double>(want);
    rep.status = got == want ? VerificationReport::Status::Pass
                             : VerificationReport::Status::Fail;
    rep.detail = "expected " + std::to_string(want);
    return rep;
}

VerificationReport bound_report(const std::string& what, const std::string& fp, long got,
                                long bound) {
    VerificationReport rep;
    rep.check = "resources:" + what;
    rep.fingerprint = fp;
    rep.measured = static_cast<double>(got);
    rep.tolerance = static_cast<double>(bound);
    rep.status = got <= bound ? VerificationReport::Status::Pass
                              : VerificationReport::Status::Fail;
    rep.detail = "bound " + std::to_string(bound);
    return rep;
}

}  // namespace

std::vector<VerificationReport> audit_resources(const ProblemInstance& inst, const Encoding& enc,
                                                const Circuit& circuit) {
    (void)enc;
    std::vector<VerificationReport> out;
    const ResourceReport rep = resource_report(circuit);
    const std::string fp = inst.fingerprint();
    const Graph& g = inst.graph;
    const long n = g.n, m = g.m(), dg = g.max_degree();

    switch (inst.kind) {
        case ProblemKind::MaxCut: {
            out.push_back(count_report("maxcut-phase-gates", fp, rep.phase_gate_count, m));
            out.push_back(bound_report("maxcut-phase-depth", fp, rep.phase_depth, dg + 1));
            break;
        }
        case ProblemKind::MaxColorableSubgraph: {
            const long kappa = inst.kappa;
            out.push_back(
                count_report("colorable-phase-gates", fp, rep.phase_gate_count, m * kappa));
            out.push_back(bound_report("colorable-phase-depth", fp, rep.phase_depth, dg + 1));
            out.push_back(
                count_report("colorable-mixer-gates", fp, rep.mixer_gate_count, n * kappa));
            out.push_back(bound_report("colorable-mixer-depth", fp, rep.mixer_depth,
                                       kappa % 2 == 0 ? 2 : 3));
            break;
        }
        case ProblemKind::E3Lin2: {
            out.push_back(count_report("e3lin2-phase-gates", fp, rep.phase_gate_count,
                                       static_cast<long>(inst.sat.clauses.size())));
            break;
        }
        case ProblemKind::MaxIndependentSet: {
            out.push_back(count_report("mis-phase-gates", fp, rep.phase_gate_count, n));
            out.push_back(bound_report("mis-phase-depth", fp, rep.phase_depth, 1));
            out.push_back(count_report("mis-partial-mixers", fp, rep.partial_mixer_count, n));
            break;
        }
        case ProblemKind::MinGraphColoring: {
            const long kappa = inst.coloring_alphabet();
            out.push_back(count_report("coloring-partial-mixers", fp, rep.partial_mixer_count,
                                       kappa * (kappa - 1) * n / 2));
            break;
        }
        case ProblemKind::Tsp: {
            const long tn = inst.tsp.n;
            out.push_back(count_report("tsp-phase-gates", fp, rep.phase_gate_count,
                                       tn * tn * (tn - 1)));
            out.push_back(count_report("tsp-partial-mixers", fp, rep.partial_mixer_count,
                                       (tn - 1) * tn * (tn - 1) / 2));
            out.push_back(
                bound_report("tsp-partial-mixer-depth", fp, rep.partial_mixer_depth, 2 * tn));
            break;
        }
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection: {
            out.push_back(count_report("partitioning-mixer-gates", fp, rep.mixer_gate_count, n));
            out.push_back(bound_report("partitioning-mixer-depth", fp, rep.mixer_depth,
                                       n % 2 == 0 ? 2 : 3));
            out.push_back(count_report("partitioning-phase-gates", fp, rep.phase_gate_count, m));
            out.push_back(bound_report("partitioning-phase-depth", fp, rep.phase_depth, dg + 1));
            break;
        }
        case ProblemKind::SmsTotalTardiness: {
            const SmsData& sms = inst.sms;
            const long h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(false);
            const long jobs = sms.n();
            out.push_back(bound_report("sms-phase-gates", fp, rep.phase_gate_count, jobs * h));
            out.push_back(bound_report("sms-partial-mixers", fp, rep.partial_mixer_count,
                                       h * jobs * (jobs - 1) / 2));
            break;
        }
        default: {
            VerificationReport rep2;
            rep2.check = "resources:unaudited";
            rep2.fingerprint = fp;
            rep2.status = VerificationReport::Status::Inconclusive;
            rep2.detail = "no closed-form audit for this kind";
            out.push_back(rep2);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------- standard catalog ----

PipelineCase make_pipeline(const std::string& name, const ProblemInstance& inst) {
    const Encoding enc = default_encoding(inst);
    return make_pipeline(name, inst, enc, default_mixer_options(inst, enc));
}

PipelineCase make_pipeline(const std::string& name, const ProblemInstance& inst,
                           const Encoding& enc, const MixerOptions& mopts) {
    PipelineCase pc;
    pc.name = name;
    pc.inst = inst;
    pc.enc = enc;
    pc.mixer = build_mixer(inst, enc, mopts);
    pc.sep = build_phase_separator(inst, enc);
    pc.init = initial_configuration(inst);
    switch (inst.kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::DirectedMaxCut:
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat:
        case ProblemKind::NaeLSat:
        case ProblemKind::SetSplitting:
        case ProblemKind::E3Lin2:
            pc.plus_state = true;
            break;
        default:
            break;
    }
    return pc;
}

std::vector<PipelineCase> standard_catalog() {
    std::vector<PipelineCase> cases;

    auto graph_instance = [](ProblemKind kind, Graph g, int kappa = 0) {
        ProblemInstance inst;
        inst.kind = kind;
        inst.sense = default_sense(kind);
        inst.graph = std::move(g);
        inst.kappa = kappa;
        return inst;
    };

    cases.push_back(make_pipeline("maxcut-k3", graph_instance(ProblemKind::MaxCut,
                                                              Graph::complete(3))));
    {
        ProblemInstance inst = graph_instance(ProblemKind::DirectedMaxCut, Graph::path(3));
        inst.graph.directed = true;
        cases.push_back(make_pipeline("directed-maxcut-p3", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxLSat;
        inst.sense = Sense::Maximize;
        inst.sat.n_vars = 3;
        inst.sat.clauses = {{1, -2}, {2, 3}, {-1, 3}};
        cases.push_back(make_pipeline("max-2-sat", inst));
        inst.kind = ProblemKind::MinLSat;
        inst.sense = Sense::Minimize;
        cases.push_back(make_pipeline("min-2-sat", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::NaeLSat;
        inst.sense = Sense::Maximize;
        inst.sat.n_vars = 4;
        inst.sat.clauses = {{1, 2, 3}, {-2, 3, 4}};
        cases.push_back(make_pipeline("nae-3-sat", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SetSplitting;
        inst.sense = Sense::Maximize;
        inst.sets.universe = 3;
        inst.sets.subsets = {{1, 2}, {2, 3}};
        cases.push_back(make_pipeline("set-splitting", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::E3Lin2;
        inst.sense = Sense::Maximize;
        inst.sat.n_vars = 4;
        inst.sat.clauses = {{1, 2, 3, 1}, {2, 3, 4, 0}};
        cases.push_back(make_pipeline("e3lin2", inst));
    }
    cases.push_back(make_pipeline("mis-path3", graph_instance(ProblemKind::MaxIndependentSet,
                                                              Graph::path(3))));
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxSetPacking;
        inst.sense = Sense::Maximize;
        inst.sets.universe = 4;
        inst.sets.subsets = {{1, 2}, {2, 3}, {3, 4}};
        cases.push_back(make_pipeline("max-set-packing", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::MinSetCover;
        inst.sense = Sense::Minimize;
        inst.sets.universe = 3;
        inst.sets.subsets = {{1, 2}, {2, 3}, {1, 3}};
        cases.push_back(make_pipeline("min-set-cover", inst));
    }
    cases.push_back(make_pipeline(
        "max-3-colorable-p3", graph_instance(ProblemKind::MaxColorableSubgraph, Graph::path(3), 3)));
    {
        // Fully-connected single-qudit mixer, greedily partitioned.
        ProblemInstance inst =
            graph_instance(ProblemKind::MaxColorableSubgraph, Graph::path(2), 4);
        Encoding enc = Encoding::one_hot(4, 2);
        MixerOptions mo;
        mo.kind = MixerKind::FullyConnected;
        mo.strategy = PartitionStrategy::GreedyCommuting;
        cases.push_back(make_pipeline("max-4-colorable-fc", inst, enc, mo));
    }
    {
        // Simultaneous (H-QAOA) controlled-X mixer.
        ProblemInstance inst = graph_instance(ProblemKind::MaxIndependentSet, Graph::path(3));
        Encoding enc = default_encoding(inst);
        MixerOptions mo = default_mixer_options(inst, enc);
        mo.simultaneous = true;
        cases.push_back(make_pipeline("mis-path3-simultaneous", inst, enc, mo));
    }
    {
        // Binary encoding with kappa = 4 = 2^2 and the ADD-compiled parity mixer.
        ProblemInstance inst =
            graph_instance(ProblemKind::MaxColorableSubgraph, Graph::path(2), 4);
        Encoding enc = Encoding::binary(4, 2);
        MixerOptions mo;
        mo.kind = MixerKind::BinaryParity;
        mo.strategy = PartitionStrategy::Parity;
        cases.push_back(make_pipeline("max-4-colorable-binary", inst, enc, mo));
    }
    cases.push_back(make_pipeline("graph-partitioning-c4",
                                  graph_instance(ProblemKind::GraphPartitioning, Graph::cycle(4))));
    cases.push_back(make_pipeline("max-bisection-c4",
                                  graph_instance(ProblemKind::MaxBisection, Graph::cycle(4))));
    cases.push_back(make_pipeline(
        "max-vertex-2-cover-p4", graph_instance(ProblemKind::MaxVertexKCover, Graph::path(4), 2)));
    cases.push_back(make_pipeline(
        "induced-2-colorable-k3",
        graph_instance(ProblemKind::MaxColorableInducedSubgraph, Graph::complete(3), 2)));
    cases.push_back(make_pipeline("min-graph-coloring-k3",
                                  graph_instance(ProblemKind::MinGraphColoring, Graph::complete(3))));
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = 3;
        inst.tsp.dist = {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
        cases.push_back(make_pipeline("tsp-3", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsSquaredTardiness;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {2, 3};
        inst.sms.w = {1.0, 2.0};
        cases.push_back(make_pipeline("sms-squared-2", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsTotalTardiness;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {1, 2};
        inst.sms.w = {1.0, 1.0};
        cases.push_back(make_pipeline("sms-total-2", inst));
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsReleaseDates;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {2, 3};
        inst.sms.r = {0, 1};
        inst.sms.w = {1.0, 1.0};
        inst.sms.horizon = 4;
        cases.push_back(make_pipeline("sms-release-2", inst));
    }
    return cases;
}

std::vector<VerificationReport> run_feasibility_suite(const std::vector<PipelineCase>& cases) {
    std::vector<VerificationReport> out;
    const auto betas = criterion_beta_samples();
    for (const auto& pc : cases) {
        const MixerRealization mix = pc.mixer.options.simultaneous
                                         ? realize_simultaneous_gate(pc.mixer)
                                         : realize_partitioned(pc.mixer);
        const auto feasible_main = enumerate_feasible(pc.inst, pc.enc);
        // Feasible set lives on the main register; ancillas start/end at 0.
        VerificationReport rep = check_feasibility_preservation(mix, feasible_main, betas);
        rep.fingerprint = pc.name;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<VerificationReport> run_connectivity_suite() {
    std::vector<VerificationReport> out;

    // Parity ring mixer on one qudit: connected within ceil(d/2) repeats.
    for (int d : {3, 4, 5, 6}) {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxColorableSubgraph;
        inst.sense = Sense::Maximize;
        inst.graph.n = 1;
        inst.kappa = d;
        const Encoding enc = Encoding::one_hot(d, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        const MixerSpec spec = build_mixer(inst, enc, mo);
        const MixerRealization mix = realize_partitioned(spec);
        const auto feasible = enumerate_feasible(inst, enc);
        VerificationReport rep = check_connectivity(mix, feasible, pi / 4, (d + 1) / 2);
        rep.fingerprint = "ring-d" + std::to_string(d);
        rep.detail += "; budget ceil(d/2)=" + std::to_string((d + 1) / 2);
        out.push_back(std::move(rep));
    }

    // TSP color-parity ordering swaps: n(n-1)/2 repeats. At beta = pi/4
    // exactly, stay and transit amplitudes share magnitude 1/sqrt(2) and
    // whole families of swap paths cancel, leaving exact zeros; any generic
    // beta in (0, pi/2) connects, so the check runs at 0.3.
    for (int n : {3, 4}) {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = n;
        inst.tsp.dist.assign(n, std::vector<double>(n, 1.0));
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::OrderingSwap;
        mo.strategy = PartitionStrategy::ColorParity;
        const MixerSpec spec = build_mixer(inst, enc, mo);
        const MixerRealization mix = realize_partitioned(spec);
        const auto feasible = enumerate_feasible(inst, enc);
        VerificationReport rep = check_connectivity(mix, feasible, 0.3, n * (n - 1) / 2);
        rep.fingerprint = "tsp-color-parity-n" + std::to_string(n);
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<VerificationReport> run_phase_suite(const std::vector<PipelineCase>& cases) {
    std::vector<VerificationReport> out;
    for (const auto& pc : cases) {
        VerificationReport rep = check_phase_separator(pc.sep, pc.inst, pc.enc);
        rep.fingerprint = pc.name;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<VerificationReport> run_trotter_suite() {
    std::vector<VerificationReport> out;

    {   // Parity-split ring mixer on one qudit, d = 4.
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxColorableSubgraph;
        inst.sense = Sense::Maximize;
        inst.graph.n = 1;
        inst.kappa = 4;
        const Encoding enc = Encoding::one_hot(4, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        VerificationReport rep = check_trotter_order(build_mixer(inst, enc, mo));
        rep.fingerprint = "ring-d4-parity";
        out.push_back(std::move(rep));
    }
    {   // Controlled-X mixer on the path graph.
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        mo.strategy = PartitionStrategy::GreedyCommuting;
        VerificationReport rep = check_trotter_order(build_mixer(inst, enc, mo));
        rep.fingerprint = "mis-path3-greedy";
        out.push_back(std::move(rep));
    }
    {   // Hamming ring on 4 qubits, parity split.
        ProblemInstance inst;
        inst.kind = ProblemKind::GraphPartitioning;
        inst.sense = Sense::Minimize;
        inst.graph = Graph::cycle(4);
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::HammingRing;
        mo.strategy = PartitionStrategy::Parity;
        VerificationReport rep = check_trotter_order(build_mixer(inst, enc, mo));
        rep.fingerprint = "hamming-ring-4-parity";
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<VerificationReport> run_resource_suite() {
    std::vector<VerificationReport> out;
    std::mt19937_64 rng(777);

    auto random_graph = [&](int n, double p_edge) {
        Graph g;
        g.n = n;
        std::uniform_real_distribution<double> uni(0, 1);
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (uni(rng) < p_edge) g.edges.push_back({u, v});
        if (g.edges.empty()) g.edges.push_back({1, 2});
        return g;
    };

    auto audit_pipeline = [&](const PipelineCase& pc) {
        const Circuit c = assemble_qaoa(pc.inst, pc.enc, pc.mixer, pc.sep, pc.init, 1,
                                        AssembleOptions{pc.plus_state, 0, pi / 4});
        auto reps = audit_resources(pc.inst, pc.enc, c);
        out.insert(out.end(), reps.begin(), reps.end());
    };

    for (int i = 0; i < 3; ++i) {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxCut;
        inst.sense = Sense::Maximize;
        inst.graph = random_graph(6, 0.5);
        audit_pipeline(make_pipeline("maxcut-rand", inst));
    }
    for (int i = 0; i < 3; ++i) {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxColorableSubgraph;
        inst.sense = Sense::Maximize;
        inst.graph = random_graph(4, 0.6);
        inst.kappa = 3;
        audit_pipeline(make_pipeline("colorable-rand", inst));
    }
    for (int i = 0; i < 3; ++i) {
        ProblemInstance inst;
        inst.kind = ProblemKind::E3Lin2;
        inst.sense = Sense::Maximize;
        inst.sat.n_vars = 5;
        std::uniform_int_distribution<int> var(1, 5), bit(0, 1);
        for (int j = 0; j < 5; ++j) {
            int a = var(rng), b = var(rng), c = var(rng);
            while (b == a) b = var(rng);
            while (c == a || c == b) c = var(rng);
            inst.sat.clauses.push_back({a, b, c, bit(rng)});
        }
        audit_pipeline(make_pipeline("e3lin2-rand", inst));
    }
    for (int i = 0; i < 3; ++i) {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = random_graph(5, 0.4);
        audit_pipeline(make_pipeline("mis-rand", inst));
    }
    for (int i = 0; i < 3; ++i) {
        ProblemInstance inst;
        inst.kind = ProblemKind::MinGraphColoring;
        inst.sense = Sense::Minimize;
        inst.graph = random_graph(3, 0.8);
        audit_pipeline(make_pipeline("coloring-rand", inst));
    }
    for (int n : {3, 4, 5}) {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = n;
        inst.tsp.dist.assign(n, std::vector<double>(n, 0.0));
        std::uniform_real_distribution<double> uni(1, 9);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v) inst.tsp.dist[u][v] = std::floor(uni(rng));
        audit_pipeline(make_pipeline("tsp-rand", inst));
    }
    for (int n : {4, 6, 8}) {
        ProblemInstance inst;
        inst.kind = ProblemKind::GraphPartitioning;
        inst.sense = Sense::Minimize;
        inst.graph = random_graph(n, 0.5);
        audit_pipeline(make_pipeline("partition-rand", inst));
    }
    return out;
}

}  // namespace qaoakit
