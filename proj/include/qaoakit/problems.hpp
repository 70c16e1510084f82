#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qaoakit/encoding.hpp"
#include "qaoakit/types.hpp"

namespace qaoakit {

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based; u < v unless directed
    std::vector<double> weights;             // optional, parallel to edges
    std::vector<double> vertex_weights;      // optional, for weighted MIS variants
    bool directed = false;

    int m() const { return static_cast<int>(edges.size()); }
    double weight(int e) const { return weights.empty() ? 1.0 : weights[e]; }
    int degree(int v) const;
    int max_degree() const;
    std::vector<int> neighbors(int v) const;
    bool has_edge(int u, int v) const;

    Graph complement() const;
    Graph line_graph() const;  // vertices = edges of *this, in edge order

    static Graph path(int n);
    static Graph cycle(int n);
    static Graph complete(int n);
};

struct SatData {
    int n_vars = 0;
    // Clause literals: +v / -v, 1-based. For E3Lin2 each "clause" is
    // {a1, a2, a3, b} instead.
    std::vector<std::vector<int>> clauses;
};

struct SetSystemData {
    int universe = 0;                       // elements 1..universe
    std::vector<std::vector<int>> subsets;  // 1-based elements
};

struct TspData {
    int n = 0;
    std::vector<std::vector<double>> dist;  // dist[u-1][v-1], diagonal ignored
    bool fix_first_city = false;            // pin city 1 to slot 1 (degeneracy removal)
};

struct SmsData {
    std::vector<int> p;                     // processing times
    std::vector<int> d;                     // deadlines
    std::vector<int> r;                     // release dates (release variant)
    std::vector<double> w;                  // weights
    int horizon = -1;                       // -1: use the kind's default
    std::optional<double> buffer_phase;     // release variant: fixed B override

    int n() const { return static_cast<int>(p.size()); }
    int default_horizon(bool with_release) const;
    int buffer_time(int job, int h) const;  // b_j = h + sum_{i<j} p_i
};

enum class ProblemKind {
    MaxCut,
    DirectedMaxCut,
    MaxLSat,
    MinLSat,
    NaeLSat,
    SetSplitting,
    E3Lin2,
    MaxIndependentSet,
    MaxClique,
    MinVertexCover,
    MaxSetPacking,
    MinSetCover,
    MaxColorableSubgraph,
    GraphPartitioning,
    MaxBisection,
    MaxVertexKCover,
    MaxColorableInducedSubgraph,
    MinGraphColoring,
    MinCliqueCover,
    MinEdgeColoring,
    Tsp,
    SmsSquaredTardiness,
    SmsTotalTardiness,
    SmsReleaseDates,
};

enum class Sense { Maximize, Minimize };

const char* kind_name(ProblemKind k);
std::optional<ProblemKind> kind_from_name(const std::string& name);
Sense default_sense(ProblemKind k);

struct ProblemInstance {
    ProblemKind kind;
    Sense sense;

    Graph graph;
    int kappa = 0;  // colorable subgraph / vertex-k-cover / coloring override
    SatData sat;
    SetSystemData sets;
    TspData tsp;
    SmsData sms;

    // --- configuration space -------------------------------------------
    // The space is described as an exhaustive index range; config(i) yields
    // the i-th configuration in a fixed order.
    std::uint64_t config_space_size() const;
    Configuration config(std::uint64_t i) const;

    double objective(const Configuration& cfg) const;
    bool is_feasible(const Configuration& cfg) const;

    // Effective coloring alphabet for MinGraphColoring-family kinds
    // (D_G + 2 unless overridden via `kappa`).
    int coloring_alphabet() const;

    // Constraint graph for subset-family kinds (MaxSetPacking, MinSetCover).
    Graph constraint_graph() const;

    std::string fingerprint() const;
};

struct BruteForceResult {
    double optimum = 0.0;
    std::vector<Configuration> argopt;
};

// Exhaustive scan of the feasible configurations. Throws when the
// configuration space exceeds the desk-scale cap (1e7).
BruteForceResult brute_force_optimum(const ProblemInstance& inst);

// Declared instance transformation; solving the image solves the original.
// Throws std::invalid_argument when the kind has no reduction.
ProblemInstance reduce(const ProblemInstance& inst);
bool has_reduction(ProblemKind k);

// Reduction plus the documented value/configuration correspondence:
// f_original = value_scale * f_image + value_offset, and pullback maps an
// image configuration to an original one.
struct ReductionMap {
    ProblemInstance image;
    double value_scale = 1.0;
    double value_offset = 0.0;
    Configuration pullback(const Configuration& image_cfg) const;
    bool flip_bits = false;  // MinVertexCover: covers complement independent sets
};
ReductionMap reduce_with_map(const ProblemInstance& inst);

// Kinds whose cataloged pipeline is the reduced image's pipeline.
bool pipeline_via_reduction(ProblemKind k);

// Default encoding for the instance per the catalog.
Encoding default_encoding(const ProblemInstance& inst);

// Sorted, duplicate-free basis indices of the feasible subspace. Throws
// when |F| would exceed 1e6.
std::vector<basis_t> enumerate_feasible(const ProblemInstance& inst, const Encoding& enc);

// Canonical trivial-to-prepare feasible start per the catalog.
Configuration initial_configuration(const ProblemInstance& inst);

// Greedy proper coloring, used for MinGraphColoring starts.
std::vector<int> greedy_coloring(const Graph& g);

// Proper edge coloring with at most max_degree + 1 classes (Vizing bound),
// found by exhaustive search; 0-based class per edge, in edge order.
// Intended for desk-scale graphs.
std::vector<int> proper_edge_coloring(const Graph& g);

}  // namespace qaoakit
