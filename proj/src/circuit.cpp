#include "qaoakit/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

namespace {

GatePrimitive with_level(GatePrimitive g, int level) {
    g.level = level;
    if (g.angle.kind != AngleRole::Kind::Fixed) g.angle.level = level;
    return g;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string Circuit::dump() const {
    std::ostringstream os;
    os << "qubits=" << n_qubits << " ancilla=" << n_ancilla << " p=" << p << "\n";
    for (const auto& g : gates) {
        os << gate_kind_name(g.kind) << " targets=[";
        for (std::size_t i = 0; i < g.targets.size(); ++i) {
            if (i) os << ",";
            os << g.targets[i];
        }
        os << "] controls=[";
        for (std::size_t i = 0; i < g.controls.size(); ++i) {
            if (i) os << ",";
            os << "(" << g.controls[i].first << "," << g.controls[i].second << ")";
        }
        os << "] role=" << g.angle.text() << " coeff=" << fmt_double(g.angle.coeff) << "\n";
    }
    return os.str();
}

Circuit assemble_qaoa(const ProblemInstance& inst, const Encoding& enc, const MixerSpec& mixer,
                      const PhaseSeparator& sep, const Configuration& init, int p,
                      const AssembleOptions& opts) {
    if (p < 1) throw std::invalid_argument("assemble_qaoa: p must be >= 1");
    (void)inst;
    Circuit c;
    c.n_qubits = enc.n_qubits();
    c.p = p;

    const MixerRealization mix = mixer.options.simultaneous
                                     ? realize_simultaneous_gate(mixer)
                                     : realize_partitioned(mixer);
    if (mix.n_qubits != c.n_qubits)
        throw std::invalid_argument("assemble_qaoa: mixer register mismatch");
    c.n_ancilla = mix.n_ancilla;

    // Init prep: Hadamard layer for |+...+>, else X gates for a basis state.
    if (opts.plus_state) {
        for (int q = 0; q < c.n_qubits; ++q) {
            GatePrimitive g;
            g.kind = GateKind::Hadamard;
            g.targets = {q};
            g.section = GatePrimitive::Section::Init;
            c.gates.push_back(std::move(g));
        }
    } else {
        const basis_t index = enc.encode(init);
        for (int q = 0; q < c.n_qubits; ++q) {
            if (!((index >> q) & 1)) continue;
            GatePrimitive g;
            g.kind = GateKind::PauliX;
            g.targets = {q};
            g.section = GatePrimitive::Section::Init;
            c.gates.push_back(std::move(g));
        }
    }
    for (int round = 0; round < opts.leading_mixer_rounds; ++round) {
        for (GatePrimitive g : mix.gates) {
            if (g.angle.kind == AngleRole::Kind::Beta)
                g.angle = AngleRole::fixed(opts.leading_mixer_beta * g.angle.coeff);
            g.section = GatePrimitive::Section::Init;
            c.gates.push_back(std::move(g));
        }
    }

    for (int level = 1; level <= p; ++level) {
        for (const GatePrimitive& g : sep.encoded) c.gates.push_back(with_level(g, level));
        for (const GatePrimitive& g : mix.gates) c.gates.push_back(with_level(g, level));
    }
    return c;
}

int circuit_depth(const std::vector<GatePrimitive>& gates, int n_qubits) {
    std::vector<int> busy_until(std::max(n_qubits, 1), 0);
    int depth = 0;
    for (const auto& g : gates) {
        int layer = 0;
        for (int q : g.targets) layer = std::max(layer, busy_until[q]);
        for (const auto& [q, v] : g.controls) layer = std::max(layer, busy_until[q]);
        ++layer;
        for (int q : g.targets) busy_until[q] = layer;
        for (const auto& [q, v] : g.controls) busy_until[q] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

ResourceReport resource_report(const Circuit& circuit) {
    ResourceReport rep;
    const int width = circuit.total_qubits();

    std::vector<GatePrimitive> init, phase1, mixer1, partials1;
    for (const auto& g : circuit.gates) {
        std::string key = std::string(gate_kind_name(g.kind)) + "/" + std::to_string(g.arity());
        rep.counts[key] += 1;
        rep.two_qubit_equivalent_estimate +=
            g.arity() <= 2 ? 1 : 8L * (g.arity() - 2);
        switch (g.section) {
            case GatePrimitive::Section::Init:
                init.push_back(g);
                break;
            case GatePrimitive::Section::Phase:
                if (g.level <= 1) {
                    phase1.push_back(g);
                    rep.phase_counts[key] += 1;
                }
                break;
            case GatePrimitive::Section::Mixer: {
                if (g.level <= 1) {
                    mixer1.push_back(g);
                    if (g.partial_mixer) partials1.push_back(g);
                }
                break;
            }
            case GatePrimitive::Section::Other:
                break;
        }
    }
    rep.depth = circuit_depth(circuit.gates, width);
    rep.init_count = static_cast<int>(init.size());
    rep.init_depth = circuit_depth(init, width);
    rep.phase_gate_count = static_cast<int>(phase1.size());
    rep.phase_depth = circuit_depth(phase1, width);
    rep.mixer_gate_count = static_cast<int>(mixer1.size());
    rep.mixer_depth = circuit_depth(mixer1, width);
    rep.partial_mixer_count = static_cast<int>(partials1.size());
    rep.partial_mixer_depth = circuit_depth(partials1, width);
    rep.notes.push_back("two_qubit_equivalent_estimate is non-normative (8(a-2) per a-ary gate)");
    return rep;
}

}  // namespace qaoakit
