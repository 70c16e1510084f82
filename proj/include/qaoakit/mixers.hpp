#pragma once

#include <array>
#include <string>
#include <vector>

#include "qaoakit/problems.hpp"
#include "qaoakit/state.hpp"

namespace qaoakit {

enum class MixerKind {
    BitFlipX,         // transverse-field X mixer (unconstrained strings)
    Ring,             // single-qudit ring (r = 1 nearby values), one-hot
    NearbyValues,     // r-nearby-values, one-hot
    FullyConnected,   // r = d - 1
    BinaryParity,     // parity ring realized on a binary register, d = 2^l
    HammingRing,      // ring over the plain bit register (fixed Hamming weight)
    ControlledX,      // bit flip gated on a neighborhood predicate
    NullSwap,         // color <-> uncolored swap gated on neighbors
    ControlledSwap,   // color pair swap gated on neighbors
    OrderingSwap,     // adjacent value-selective ordering swaps
    TimeSwap,         // absolute-encoding time swaps
    ReleaseNullSwap,  // window <-> buffer swaps gated on conflicts
};

enum class PartitionStrategy {
    Singleton,
    Parity,
    Color,
    ColorParity,
    TimeColor,
    GreedyCommuting,
};

const char* mixer_kind_name(MixerKind k);
const char* partition_strategy_name(PartitionStrategy s);
std::optional<MixerKind> mixer_kind_from_name(const std::string& s);
std::optional<PartitionStrategy> partition_strategy_from_name(const std::string& s);

// Structured label: (register/vertex, pair low, pair high, position/time,
// stride). Unused slots are -1. Lexicographic key order is the canonical
// deterministic ordering everywhere.
struct MixerLabel {
    std::array<int, 5> key{-1, -1, -1, -1, -1};
    std::string name;

    bool operator<(const MixerLabel& o) const { return key < o.key; }
};

struct PartialMixer {
    MixerLabel label;
    MixerKind kind = MixerKind::BitFlipX;
    std::vector<HermitianTerm> generator;

    std::vector<int> support() const;
    std::vector<int> control_support() const;
};

struct OrderedPartition {
    PartitionStrategy strategy = PartitionStrategy::Singleton;
    std::vector<std::vector<PartialMixer>> parts;  // atomic partial mixers

    int total() const;
    // Structural commutation within every part (targets of one never meet
    // the support of another; shared read-only controls are fine).
    bool commuting_within_parts() const;
};

struct MixerOptions {
    MixerKind kind;
    PartitionStrategy strategy = PartitionStrategy::GreedyCommuting;
    int repeats = 1;
    bool simultaneous = false;
    int r = 1;                    // NearbyValues
    bool cyclic_positions = false;  // OrderingSwap: include the wrap position
};

struct MixerSpec {
    MixerOptions options;
    std::vector<PartialMixer> partials;  // catalog granularity
    OrderedPartition partition;          // atomic, for the partitioned family
    int n_main_qubits = 0;
    Encoding encoding;
};

// Realized one application of the mixer; gates carry beta(1) roles.
struct MixerRealization {
    std::vector<GatePrimitive> gates;
    int n_qubits = 0;   // main register
    int n_ancilla = 0;  // shared compile ancilla, appended after main
    int partial_count = 0;
    int parts = 0;  // partial-mixer granularity depth of one application
};

// Catalog of partial mixers for (instance, encoding, kind). Cardinalities
// follow the compendium; single-qudit kinds return one entry per register
// whose generator lists every coupling.
std::vector<PartialMixer> build_partial_mixers(const ProblemInstance& inst, const Encoding& enc,
                                               const MixerOptions& opts);

// Proper edge coloring of K_n by the polygon construction: n-1 classes for
// even n, n for odd n; parts ordered by their lexicographically lowest pair.
std::vector<std::vector<std::pair<int, int>>> edge_coloring_complete_graph(int n);

// Splits the catalog into atomic single-coupling partial mixers.
std::vector<PartialMixer> atomize(const std::vector<PartialMixer>& partials);

OrderedPartition make_partition(const std::vector<PartialMixer>& partials,
                                PartitionStrategy strategy, const ProblemInstance& inst,
                                const Encoding& enc);

MixerSpec build_mixer(const ProblemInstance& inst, const Encoding& enc,
                      const MixerOptions& opts);

MixerRealization realize_partitioned(const MixerSpec& spec);
// Dense e^{-i beta sum(generators)} on the full register (desk scale).
DenseMatrix realize_simultaneous(const MixerSpec& spec, double beta);
// Simultaneous mixer as a single circuit gate (applied by Taylor expansion).
MixerRealization realize_simultaneous_gate(const MixerSpec& spec);

// Default mixer family per the compendium.
MixerOptions default_mixer_options(const ProblemInstance& inst, const Encoding& enc);

// Parity ring realized on a binary register: ADD(+1), X(beta) on the least
// significant bit, ADD(-1), X(beta).
std::vector<GatePrimitive> binary_parity_mixer(const Encoding& enc, int reg);

}  // namespace qaoakit
