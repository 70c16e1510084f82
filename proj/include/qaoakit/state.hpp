#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qaoakit/types.hpp"

namespace qaoakit {

// Dense statevector over 2^n_qubits amplitudes. Qubit q is bit q of the
// basis index (qubit 0 least significant).
struct AmplitudeVector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    AmplitudeVector() = default;
    explicit AmplitudeVector(int n) : n_qubits(n), amps(std::size_t{1} << n, cplx{0.0, 0.0}) {}

    static AmplitudeVector basis_state(int n, basis_t index);

    std::size_t dim() const { return amps.size(); }
    double norm_sq() const;
    // Squared overlap |<a|b>|^2, phase-insensitive.
    double fidelity(const AmplitudeVector& other) const;
};

struct QaoaSchedule {
    std::vector<double> gammas;
    std::vector<double> betas;

    int p() const { return static_cast<int>(gammas.size()); }
};

// Every parameterized gate angle is coeff * (gamma_k | beta_k | 1).
struct AngleRole {
    enum class Kind { Gamma, Beta, Fixed };
    Kind kind = Kind::Fixed;
    int level = 0;  // 1-based QAOA level for Gamma/Beta
    double coeff = 1.0;

    static AngleRole gamma(int level, double coeff = 1.0) { return {Kind::Gamma, level, coeff}; }
    static AngleRole beta(int level, double coeff = 1.0) { return {Kind::Beta, level, coeff}; }
    static AngleRole fixed(double coeff) { return {Kind::Fixed, 0, coeff}; }

    double resolve(const QaoaSchedule& sched) const;
    std::string text() const;
};

// Phase function for diagonal separators: g over sub-indices of the target
// qubits. A table is cached when the target count is small enough.
struct DiagFn {
    std::function<double(basis_t)> fn;
    std::vector<double> table;  // size 2^k when cached, else empty

    double operator()(basis_t sub) const { return table.empty() ? fn(sub) : table[sub]; }
};

// Hermitian building block: coefficient times either a two-level coupling
// |a><b| + |b><a| on `qubits`, or a Pauli X on qubits[0], each optionally
// multiplied by diagonal projectors. `control_cnf` is an AND of OR-clauses
// over (qubit, required bit) literals; plain conjunctive controls are
// one-literal clauses.
struct HermitianTerm {
    enum class Body { TwoLevel, PauliX };
    Body body = Body::TwoLevel;
    double coeff = 1.0;
    std::vector<int> qubits;
    basis_t label_a = 0, label_b = 0;  // TwoLevel: sub-labels over `qubits`
    std::vector<std::vector<std::pair<int, int>>> control_cnf;

    static HermitianTerm two_level(std::vector<int> qs, basis_t a, basis_t b, double coeff = 1.0);
    static HermitianTerm pauli_x(int q, double coeff = 1.0);

    bool cnf_holds(basis_t index) const;
    std::vector<int> support() const;          // target qubits
    std::vector<int> control_support() const;  // qubits read by the cnf
};

enum class GateKind {
    PauliX,     // exact X (with controls: generalized Toffoli)
    Hadamard,   // exact H
    RX,         // e^{-i theta X}
    RZ,         // e^{-i theta Z}
    MultiZ,     // e^{-i theta Z x ... x Z}
    XY,         // e^{-i theta (X_a X_b + Y_a Y_b)}
    TwoLevel,   // e^{-i theta (|a><b| + |b><a|)} over the target register
    SwapExp,    // e^{+i theta SWAP} = cos(theta) I + i sin(theta) SWAP
    CPhase,     // scalar e^{-i theta} gated by the controls (no targets)
    DiagPhase,  // amps[x] *= e^{-i theta g(x_targets)}
    Expm,       // e^{-i theta H}, H a sum of HermitianTerms on the register
    Dense,      // fixed unitary on the target qubits
};

const char* gate_kind_name(GateKind k);

struct GatePrimitive {
    GateKind kind;
    std::vector<int> targets;
    std::vector<std::pair<int, int>> controls;  // (qubit, required bit)
    AngleRole angle;

    basis_t label_a = 0, label_b = 0;                       // TwoLevel
    std::shared_ptr<const DiagFn> diag;                     // DiagPhase
    std::shared_ptr<const std::vector<HermitianTerm>> ham;  // Expm
    std::shared_ptr<const DenseMatrix> dense;               // Dense

    // Section/level metadata for assembly and resource reporting.
    enum class Section { Init, Phase, Mixer, Other };
    Section section = Section::Other;
    int level = 0;                  // QAOA level the gate belongs to (0 = prep)
    bool partial_mixer = false;     // counts as one partial mixer gate
    int arity() const { return static_cast<int>(targets.size() + controls.size()); }
};

// Applies U|psi> in place. Throws std::invalid_argument on bad indices or
// an unresolvable angle role.
void apply_gate(AmplitudeVector& state, const GatePrimitive& gate, const QaoaSchedule& angles);

// amps[x] *= e^{-i gamma g(x)} for g total on all basis indices.
void apply_diagonal_phase(AmplitudeVector& state, const std::function<double(basis_t)>& g,
                          double gamma);

// e^{-i theta H} for dense Hermitian H (scaled Taylor with repeated
// squaring). Dimension capped at dense_dim_cap; Hermiticity checked to 1e-10.
DenseMatrix expm_hermitian(const DenseMatrix& h, double theta);

// H|psi> and e^{-i theta H}|psi> for H given as a term sum; the exponential
// is evaluated by a scaled Taylor series, never densified.
void apply_terms(const std::vector<HermitianTerm>& terms, const std::vector<cplx>& in,
                 std::vector<cplx>& out, int n_qubits);
void apply_expm_terms(AmplitudeVector& state, const std::vector<HermitianTerm>& terms,
                      double theta);

DenseMatrix terms_to_dense(const std::vector<HermitianTerm>& terms, int n_qubits);

std::shared_ptr<const DiagFn> make_diag_fn(std::function<double(basis_t)> fn,
                                           int n_target_qubits, bool cache = true);

}  // namespace qaoakit
