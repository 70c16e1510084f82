#pragma once

#include <map>
#include <string>
#include <vector>

#include "qaoakit/mixers.hpp"
#include "qaoakit/phase.hpp"

namespace qaoakit {

struct Circuit {
    int n_qubits = 0;  // main register
    int n_ancilla = 0;
    int p = 0;
    std::vector<GatePrimitive> gates;

    int total_qubits() const { return n_qubits + n_ancilla; }
    std::string dump() const;  // one gate per line, stable ordering
};

struct ResourceReport {
    std::map<std::string, int> counts;  // "KIND/arity" over the whole circuit
    int depth = 0;

    // Per-application (level 1) section figures.
    int init_count = 0;
    int init_depth = 0;
    std::map<std::string, int> phase_counts;
    int phase_gate_count = 0;
    int phase_depth = 0;
    int mixer_gate_count = 0;
    int mixer_depth = 0;
    int partial_mixer_count = 0;
    int partial_mixer_depth = 0;

    // Non-normative estimate: gates of arity a > 2 counted as 8(a-2)
    // two-qubit gates (the final 2-local compilation is left open).
    long two_qubit_equivalent_estimate = 0;

    std::vector<std::string> notes;
};

struct AssembleOptions {
    bool plus_state = false;  // Hadamard start (bit-flip family default)
    int leading_mixer_rounds = 0;  // fixed-angle mixer applications after prep
    double leading_mixer_beta = 0.78539816339744830961;  // pi/4
};

// init-prep then p alternating (phase, mixer) blocks with roles
// gamma(k), beta(k).
Circuit assemble_qaoa(const ProblemInstance& inst, const Encoding& enc, const MixerSpec& mixer,
                      const PhaseSeparator& sep, const Configuration& init, int p,
                      const AssembleOptions& opts = {});

ResourceReport resource_report(const Circuit& circuit);

// Greedy earliest-layer scheduling on (targets + controls) disjointness,
// respecting emission order on shared qubits.
int circuit_depth(const std::vector<GatePrimitive>& gates, int n_qubits);

}  // namespace qaoakit
