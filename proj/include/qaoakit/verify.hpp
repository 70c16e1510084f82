#pragma once

#include <string>
#include <vector>

#include "qaoakit/circuit.hpp"
#include "qaoakit/engine.hpp"

namespace qaoakit {

struct VerificationReport {
    std::string check;
    std::string fingerprint;
    enum class Status { Pass, Fail, Inconclusive } status = Status::Fail;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;

    std::string text() const;
};

// beta draws for criteria checks: fixed anchors plus seeded uniform draws
// from (0, pi/2).
std::vector<double> criterion_beta_samples(std::uint64_t seed = 20170301, int extra = 15);

// Dense matrix of a single gate built from first principles (local matrix +
// control embedding); an independent path from apply_gate.
DenseMatrix dense_gate_matrix(const GatePrimitive& gate, int n_qubits,
                              const QaoaSchedule& angles);

// Dense matrix of a gate list (applied left to right) via dense_gate_matrix.
DenseMatrix dense_circuit_matrix(const std::vector<GatePrimitive>& gates, int n_qubits,
                                 const QaoaSchedule& angles);

// Max over feasible basis starts and beta samples of the squared amplitude
// leaving the feasible subspace; pass iff < 1e-10.
VerificationReport check_feasibility_preservation(const MixerRealization& mixer,
                                                  const std::vector<basis_t>& feasible,
                                                  const std::vector<double>& betas);

// Smallest r <= r_max at which |<x|U^r|y>| > 1e-8 for every feasible pair.
VerificationReport check_connectivity(const MixerRealization& mixer,
                                      const std::vector<basis_t>& feasible, double beta_star,
                                      int r_max);

// Diagonality plus least-squares recovery of the declared affine map.
VerificationReport check_phase_separator(const PhaseSeparator& sep, const ProblemInstance& inst,
                                         const Encoding& enc);

// Error slope of ||U_partitioned - U_simultaneous|| as beta halves;
// pass iff slope >= 1.9 (or exact match for commuting partitions).
VerificationReport check_trotter_order(const MixerSpec& spec);

// Compares resource_report against the compendium formulas for the kind.
std::vector<VerificationReport> audit_resources(const ProblemInstance& inst, const Encoding& enc,
                                                const Circuit& circuit);

// A ready-to-run pipeline: instance, encoding, mixer, separator, init.
struct PipelineCase {
    std::string name;
    ProblemInstance inst;
    Encoding enc;
    MixerSpec mixer;
    PhaseSeparator sep;
    Configuration init;
    bool plus_state = false;
};

PipelineCase make_pipeline(const std::string& name, const ProblemInstance& inst);
PipelineCase make_pipeline(const std::string& name, const ProblemInstance& inst,
                           const Encoding& enc, const MixerOptions& mopts);

// The minimum-size catalog swept by the verification suite.
std::vector<PipelineCase> standard_catalog();

std::vector<VerificationReport> run_feasibility_suite(const std::vector<PipelineCase>& cases);
std::vector<VerificationReport> run_connectivity_suite();
std::vector<VerificationReport> run_phase_suite(const std::vector<PipelineCase>& cases);
std::vector<VerificationReport> run_trotter_suite();
std::vector<VerificationReport> run_resource_suite();

}  // namespace qaoakit
