#include "qaoakit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qaoakit {

// ---------------------------------------------------------------- Graph ---

int Graph::degree(int v) const {
    int deg = 0;
    for (const auto& [a, b] : edges) {
        if (a == v || b == v) ++deg;
    }
    return deg;
}

int Graph::max_degree() const {
    std::vector<int> deg(n + 1, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> nb;
    for (const auto& [a, b] : edges) {
        if (a == v) nb.push_back(b);
        if (b == v) nb.push_back(a);
    }
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    return nb;
}

bool Graph::has_edge(int u, int v) const {
    for (const auto& [a, b] : edges) {
        if ((a == u && b == v) || (!directed && a == v && b == u)) return true;
    }
    return false;
}

Graph Graph::complement() const {
    Graph g;
    g.n = n;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (!has_edge(u, v)) g.edges.push_back({u, v});
        }
    }
    return g;
}

Graph Graph::line_graph() const {
    Graph g;
    g.n = m();
    for (int e = 0; e < m(); ++e) {
        for (int f = e + 1; f < m(); ++f) {
            const auto& [a, b] = edges[e];
            const auto& [c, d] = edges[f];
            if (a == c || a == d || b == c || b == d) g.edges.push_back({e + 1, f + 1});
        }
    }
    return g;
}

Graph Graph::path(int n) {
    Graph g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.push_back({v, v + 1});
    return g;
}

Graph Graph::cycle(int n) {
    Graph g = path(n);
    if (n > 2) g.edges.push_back({1, n});
    return g;
}

Graph Graph::complete(int n) {
    Graph g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.edges.push_back({u, v});
    return g;
}

// ------------------------------------------------------------------ SMS ---

int SmsData::default_horizon(bool with_release) const {
    const int total = std::accumulate(p.begin(), p.end(), 0);
    if (!with_release) return total;
    const int dmax = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    return dmax + total;
}

int SmsData::buffer_time(int job, int h) const {
    int b = h;
    for (int i = 0; i < job; ++i) b += p[i];
    return b;
}

// ---------------------------------------------------------------- names ---

namespace {

struct KindName {
    ProblemKind kind;
    const char* name;
};

constexpr KindName kind_names[] = {
    {ProblemKind::MaxCut, "maxcut"},
    {ProblemKind::DirectedMaxCut, "directed-maxcut"},
    {ProblemKind::MaxLSat, "max-l-sat"},
    {ProblemKind::MinLSat, "min-l-sat"},
    {ProblemKind::NaeLSat, "nae-l-sat"},
    {ProblemKind::SetSplitting, "set-splitting"},
    {ProblemKind::E3Lin2, "e3lin2"},
    {ProblemKind::MaxIndependentSet, "max-independent-set"},
    {ProblemKind::MaxClique, "max-clique"},
    {ProblemKind::MinVertexCover, "min-vertex-cover"},
    {ProblemKind::MaxSetPacking, "max-set-packing"},
    {ProblemKind::MinSetCover, "min-set-cover"},
    {ProblemKind::MaxColorableSubgraph, "max-colorable-subgraph"},
    {ProblemKind::GraphPartitioning, "graph-partitioning"},
    {ProblemKind::MaxBisection, "max-bisection"},
    {ProblemKind::MaxVertexKCover, "max-vertex-k-cover"},
    {ProblemKind::MaxColorableInducedSubgraph, "max-colorable-induced-subgraph"},
    {ProblemKind::MinGraphColoring, "min-graph-coloring"},
    {ProblemKind::MinCliqueCover, "min-clique-cover"},
    {ProblemKind::MinEdgeColoring, "min-edge-coloring"},
    {ProblemKind::Tsp, "tsp"},
    {ProblemKind::SmsSquaredTardiness, "sms-squared-tardiness"},
    {ProblemKind::SmsTotalTardiness, "sms-total-tardiness"},
    {ProblemKind::SmsReleaseDates, "sms-release-dates"},
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Unranks `rank` into the permutation of {1..n} in lexicographic order.
std::vector<int> unrank_permutation(int n, std::uint64_t rank) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> perm;
    for (int k = n; k >= 1; --k) {
        const std::uint64_t block = factorial(k - 1);
        const std::size_t idx = static_cast<std::size_t>(rank / block);
        rank %= block;
        perm.push_back(pool[idx]);
        pool.erase(pool.begin() + idx);
    }
    return perm;
}

int ceil_log2_count(int values) {
    int l = 0;
    while ((1 << l) < values) ++l;
    return l;
}

bool clause_satisfied(const std::vector<int>& clause, const std::vector<int>& x) {
    for (int lit : clause) {
        const int v = std::abs(lit);
        const bool val = x[v - 1] != 0;
        if ((lit > 0) == val) return true;
    }
    return false;
}

bool nae_satisfied(const std::vector<int>& clause, const std::vector<int>& x) {
    bool any_true = false, any_false = false;
    for (int lit : clause) {
        const int v = std::abs(lit);
        bool val = x[v - 1] != 0;
        if (lit < 0) val = !val;
        (val ? any_true : any_false) = true;
    }
    return any_true && any_false;
}

}  // namespace

const char* kind_name(ProblemKind k) {
    for (const auto& kn : kind_names) {
        if (kn.kind == k) return kn.name;
    }
    return "?";
}

std::optional<ProblemKind> kind_from_name(const std::string& name) {
    for (const auto& kn : kind_names) {
        if (name == kn.name) return kn.kind;
    }
    return std::nullopt;
}

Sense default_sense(ProblemKind k) {
    switch (k) {
        case ProblemKind::MinLSat:
        case ProblemKind::MinVertexCover:
        case ProblemKind::MinSetCover:
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
        case ProblemKind::Tsp:
        case ProblemKind::SmsSquaredTardiness:
        case ProblemKind::SmsTotalTardiness:
        case ProblemKind::SmsReleaseDates:
            return Sense::Minimize;
        default:
            return Sense::Maximize;
    }
}

// ------------------------------------------------- configuration spaces ---

namespace {

enum class SpaceFamily { Bits, Dits, Ordering, OrderingSlack, CompactSchedule, WindowSchedule };

SpaceFamily space_family(ProblemKind k) {
    switch (k) {
        case ProblemKind::MaxColorableSubgraph:
        case ProblemKind::MaxColorableInducedSubgraph:
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
            return SpaceFamily::Dits;
        case ProblemKind::Tsp:
            return SpaceFamily::Ordering;
        case ProblemKind::SmsSquaredTardiness:
            return SpaceFamily::OrderingSlack;
        case ProblemKind::SmsTotalTardiness:
            return SpaceFamily::CompactSchedule;
        case ProblemKind::SmsReleaseDates:
            return SpaceFamily::WindowSchedule;
        default:
            return SpaceFamily::Bits;
    }
}

}  // namespace

int ProblemInstance::coloring_alphabet() const {
    if (kappa > 0 &&
        (kind == ProblemKind::MaxColorableSubgraph ||
         kind == ProblemKind::MaxColorableInducedSubgraph || kind == ProblemKind::MaxVertexKCover))
        return kappa;
    switch (kind) {
        case ProblemKind::MinGraphColoring:
            return kappa > 0 ? kappa : graph.max_degree() + 2;
        case ProblemKind::MinCliqueCover:
            return kappa > 0 ? kappa : graph.complement().max_degree() + 2;
        case ProblemKind::MinEdgeColoring:
            return kappa > 0 ? kappa : graph.line_graph().max_degree() + 2;
        default:
            return kappa;
    }
}

Graph ProblemInstance::constraint_graph() const {
    Graph g;
    g.n = static_cast<int>(sets.subsets.size());
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            const auto& a = sets.subsets[i];
            const auto& b = sets.subsets[j];
            const bool intersect = std::any_of(a.begin(), a.end(), [&](int e) {
                return std::find(b.begin(), b.end(), e) != b.end();
            });
            if (intersect) g.edges.push_back({i + 1, j + 1});
        }
    }
    return g;
}

namespace {

int n_binary_vars(const ProblemInstance& inst) {
    switch (inst.kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::DirectedMaxCut:
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover:
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection:
        case ProblemKind::MaxVertexKCover:
            return inst.graph.n;
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat:
        case ProblemKind::NaeLSat:
        case ProblemKind::E3Lin2:
            return inst.sat.n_vars;
        case ProblemKind::SetSplitting:
            return inst.sets.universe;
        case ProblemKind::MaxSetPacking:
        case ProblemKind::MinSetCover:
            return static_cast<int>(inst.sets.subsets.size());
        default:
            throw std::invalid_argument("not a binary-variable kind");
    }
}

int n_dit_registers(const ProblemInstance& inst) {
    if (inst.kind == ProblemKind::MinEdgeColoring) return inst.graph.m();
    return inst.graph.n;
}

int dit_alphabet(const ProblemInstance& inst) {
    switch (inst.kind) {
        case ProblemKind::MaxColorableSubgraph:
            return inst.kappa;
        case ProblemKind::MaxColorableInducedSubgraph:
            return inst.kappa + 1;
        default:
            return inst.coloring_alphabet();
    }
}

std::vector<int> sms_slack_ranges(const SmsData& sms) {
    std::vector<int> sizes;
    for (int i = 0; i < sms.n(); ++i) {
        const int span = std::max(1, sms.d[i] - sms.p[i] + 1);
        sizes.push_back(1 << ceil_log2_count(span));
    }
    return sizes;
}

std::vector<std::vector<int>> sms_windows(const ProblemInstance& inst) {
    const SmsData& sms = inst.sms;
    std::vector<std::vector<int>> windows;
    if (inst.kind == ProblemKind::SmsTotalTardiness) {
        const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(false);
        for (int i = 0; i < sms.n(); ++i) {
            std::vector<int> w;
            for (int t = 0; t <= h - sms.p[i]; ++t) w.push_back(t);
            windows.push_back(std::move(w));
        }
    } else {  // release dates: W_j = [r_j, h - p_j] plus the buffer slot b_j
        const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(true);
        for (int j = 0; j < sms.n(); ++j) {
            std::vector<int> w;
            const int rj = sms.r.empty() ? 0 : sms.r[j];
            for (int t = rj; t <= h - sms.p[j]; ++t) w.push_back(t);
            w.push_back(sms.buffer_time(j, h));
            windows.push_back(std::move(w));
        }
    }
    return windows;
}

std::vector<int> schedule_from_ordering(const std::vector<int>& ordering,
                                        const std::vector<int>& p) {
    std::vector<int> start(ordering.size(), 0);
    int t = 0;
    for (int job : ordering) {
        start[job - 1] = t;
        t += p[job - 1];
    }
    return start;
}

}  // namespace

std::uint64_t ProblemInstance::config_space_size() const {
    switch (space_family(kind)) {
        case SpaceFamily::Bits:
            return std::uint64_t{1} << n_binary_vars(*this);
        case SpaceFamily::Dits: {
            std::uint64_t total = 1;
            const int d = dit_alphabet(*this);
            for (int i = 0; i < n_dit_registers(*this); ++i) total *= d;
            return total;
        }
        case SpaceFamily::Ordering:
            return factorial(tsp.n);
        case SpaceFamily::OrderingSlack: {
            std::uint64_t total = factorial(sms.n());
            for (int s : sms_slack_ranges(sms)) total *= s;
            return total;
        }
        case SpaceFamily::CompactSchedule:
            return factorial(sms.n());
        case SpaceFamily::WindowSchedule: {
            std::uint64_t total = 1;
            for (const auto& w : sms_windows(*this)) total *= w.size();
            return total;
        }
    }
    return 0;
}

Configuration ProblemInstance::config(std::uint64_t i) const {
    Configuration cfg;
    switch (space_family(kind)) {
        case SpaceFamily::Bits: {
            cfg.kind = Configuration::Kind::Dits;
            const int n = n_binary_vars(*this);
            for (int k = 0; k < n; ++k) cfg.values.push_back(static_cast<int>((i >> k) & 1));
            break;
        }
        case SpaceFamily::Dits: {
            cfg.kind = Configuration::Kind::Dits;
            const int d = dit_alphabet(*this);
            for (int k = 0; k < n_dit_registers(*this); ++k) {
                cfg.values.push_back(static_cast<int>(i % d));
                i /= d;
            }
            break;
        }
        case SpaceFamily::Ordering: {
            cfg.kind = Configuration::Kind::Ordering;
            cfg.values = unrank_permutation(tsp.n, i);
            break;
        }
        case SpaceFamily::OrderingSlack: {
            cfg.kind = Configuration::Kind::Ordering;
            const auto ranges = sms_slack_ranges(sms);
            for (int s : ranges) {
                cfg.slack.push_back(static_cast<int>(i % s));
                i /= s;
            }
            cfg.values = unrank_permutation(sms.n(), i);
            break;
        }
        case SpaceFamily::CompactSchedule: {
            cfg.kind = Configuration::Kind::Schedule;
            cfg.values = schedule_from_ordering(unrank_permutation(sms.n(), i), sms.p);
            break;
        }
        case SpaceFamily::WindowSchedule: {
            cfg.kind = Configuration::Kind::Schedule;
            for (const auto& w : sms_windows(*this)) {
                cfg.values.push_back(w[static_cast<std::size_t>(i % w.size())]);
                i /= w.size();
            }
            break;
        }
    }
    return cfg;
}

// ------------------------------------------------ objective/feasibility ---

namespace {

void check_config(const ProblemInstance& inst, const Configuration& cfg) {
    std::size_t want = 0;
    switch (space_family(inst.kind)) {
        case SpaceFamily::Bits: want = n_binary_vars(inst); break;
        case SpaceFamily::Dits: want = n_dit_registers(inst); break;
        case SpaceFamily::Ordering: want = inst.tsp.n; break;
        case SpaceFamily::OrderingSlack:
        case SpaceFamily::CompactSchedule:
        case SpaceFamily::WindowSchedule: want = inst.sms.n(); break;
    }
    if (cfg.values.size() != want)
        throw std::invalid_argument("configuration does not match the instance space");
    if (space_family(inst.kind) == SpaceFamily::OrderingSlack &&
        cfg.slack.size() != static_cast<std::size_t>(inst.sms.n()))
        throw std::invalid_argument("configuration is missing its slack variables");
}

int count_labels_used(const std::vector<int>& values) {
    std::set<int> used(values.begin(), values.end());
    return static_cast<int>(used.size());
}

double sms_release_tardiness(const ProblemInstance& inst, const Configuration& cfg) {
    const SmsData& sms = inst.sms;
    const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(true);
    double total = 0.0;
    for (int j = 0; j < sms.n(); ++j) {
        const int s = cfg.values[j];
        if (s >= h) {  // buffer slot
            const double phase =
                sms.buffer_phase ? *sms.buffer_phase
                                 : static_cast<double>(sms.buffer_time(j, h) - sms.d[j]);
            total += sms.w[j] * phase;
        } else {
            total += sms.w[j] * std::max(0, s + sms.p[j] - sms.d[j]);
        }
    }
    return total;
}

}  // namespace

double ProblemInstance::objective(const Configuration& cfg) const {
    check_config(*this, cfg);
    const auto& x = cfg.values;
    switch (kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection: {
            double cut = 0.0;
            for (int e = 0; e < graph.m(); ++e) {
                const auto& [u, v] = graph.edges[e];
                if (x[u - 1] != x[v - 1]) cut += graph.weight(e);
            }
            return cut;
        }
        case ProblemKind::DirectedMaxCut: {
            double cut = 0.0;
            for (int e = 0; e < graph.m(); ++e) {
                const auto& [u, v] = graph.edges[e];
                if (x[u - 1] == 1 && x[v - 1] == 0) cut += graph.weight(e);
            }
            return cut;
        }
        case ProblemKind::MaxVertexKCover: {
            double covered = 0.0;
            for (int e = 0; e < graph.m(); ++e) {
                const auto& [u, v] = graph.edges[e];
                if (x[u - 1] == 1 || x[v - 1] == 1) covered += graph.weight(e);
            }
            return covered;
        }
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat: {
            int sat_count = 0;
            for (const auto& c : sat.clauses) sat_count += clause_satisfied(c, x);
            return sat_count;
        }
        case ProblemKind::NaeLSat: {
            int sat_count = 0;
            for (const auto& c : sat.clauses) sat_count += nae_satisfied(c, x);
            return sat_count;
        }
        case ProblemKind::SetSplitting: {
            int split = 0;
            for (const auto& s : sets.subsets) {
                bool in0 = false, in1 = false;
                for (int e : s) (x[e - 1] ? in1 : in0) = true;
                split += (in0 && in1);
            }
            return split;
        }
        case ProblemKind::E3Lin2: {
            int satisfied = 0;
            for (const auto& eq : sat.clauses) {
                const int sum = x[eq[0] - 1] + x[eq[1] - 1] + x[eq[2] - 1];
                satisfied += (sum % 2 == eq[3]);
            }
            return satisfied;
        }
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover: {
            double size = 0.0;
            for (int v = 0; v < graph.n; ++v) {
                if (x[v]) size += graph.vertex_weights.empty() ? 1.0 : graph.vertex_weights[v];
            }
            return size;
        }
        case ProblemKind::MaxSetPacking:
        case ProblemKind::MinSetCover: {
            int chosen = 0;
            for (int v : x) chosen += (v != 0);
            return chosen;
        }
        case ProblemKind::MaxColorableSubgraph: {
            double properly = 0.0;
            for (int e = 0; e < graph.m(); ++e) {
                const auto& [u, v] = graph.edges[e];
                if (x[u - 1] != x[v - 1]) properly += graph.weight(e);
            }
            return properly;
        }
        case ProblemKind::MaxColorableInducedSubgraph: {
            int colored = 0;
            for (int v : x) colored += (v != 0);
            return colored;
        }
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
            return count_labels_used(x);
        case ProblemKind::Tsp: {
            double total = 0.0;
            for (int j = 0; j < tsp.n; ++j) {
                const int u = x[j], v = x[(j + 1) % tsp.n];
                total += tsp.dist[u - 1][v - 1];
            }
            return total;
        }
        case ProblemKind::SmsSquaredTardiness: {
            const auto start = schedule_from_ordering(x, sms.p);
            double total = 0.0;
            for (int i = 0; i < sms.n(); ++i) {
                const double t = start[i] + sms.p[i] - sms.d[i] + cfg.slack[i];
                total += sms.w[i] * t * t;
            }
            return total;
        }
        case ProblemKind::SmsTotalTardiness: {
            double total = 0.0;
            for (int i = 0; i < sms.n(); ++i)
                total += sms.w[i] * std::max(0, x[i] + sms.p[i] - sms.d[i]);
            return total;
        }
        case ProblemKind::SmsReleaseDates:
            return sms_release_tardiness(*this, cfg);
    }
    throw std::logic_error("unhandled kind");
}

bool ProblemInstance::is_feasible(const Configuration& cfg) const {
    check_config(*this, cfg);
    const auto& x = cfg.values;
    switch (kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::DirectedMaxCut:
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat:
        case ProblemKind::NaeLSat:
        case ProblemKind::SetSplitting:
        case ProblemKind::E3Lin2:
        case ProblemKind::MaxColorableSubgraph:
        case ProblemKind::SmsSquaredTardiness:
            return true;
        case ProblemKind::MaxIndependentSet: {
            for (const auto& [u, v] : graph.edges) {
                if (x[u - 1] && x[v - 1]) return false;
            }
            return true;
        }
        case ProblemKind::MaxClique: {
            for (int u = 1; u <= graph.n; ++u) {
                for (int v = u + 1; v <= graph.n; ++v) {
                    if (x[u - 1] && x[v - 1] && !graph.has_edge(u, v)) return false;
                }
            }
            return true;
        }
        case ProblemKind::MinVertexCover: {
            for (const auto& [u, v] : graph.edges) {
                if (!x[u - 1] && !x[v - 1]) return false;
            }
            return true;
        }
        case ProblemKind::MaxSetPacking: {
            const Graph cg = constraint_graph();
            for (const auto& [i, j] : cg.edges) {
                if (x[i - 1] && x[j - 1]) return false;
            }
            return true;
        }
        case ProblemKind::MinSetCover: {
            std::vector<char> covered(sets.universe + 1, 0);
            for (std::size_t j = 0; j < sets.subsets.size(); ++j) {
                if (!x[j]) continue;
                for (int e : sets.subsets[j]) covered[e] = 1;
            }
            for (int e = 1; e <= sets.universe; ++e) {
                if (!covered[e]) return false;
            }
            return true;
        }
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection: {
            int weight = 0;
            for (int v : x) weight += (v != 0);
            return 2 * weight == graph.n;
        }
        case ProblemKind::MaxVertexKCover: {
            int weight = 0;
            for (int v : x) weight += (v != 0);
            return weight == kappa;
        }
        case ProblemKind::MaxColorableInducedSubgraph: {
            for (const auto& [u, v] : graph.edges) {
                if (x[u - 1] != 0 && x[u - 1] == x[v - 1]) return false;
            }
            return true;
        }
        case ProblemKind::MinGraphColoring: {
            for (const auto& [u, v] : graph.edges) {
                if (x[u - 1] == x[v - 1]) return false;
            }
            return true;
        }
        case ProblemKind::MinCliqueCover: {
            for (int u = 1; u <= graph.n; ++u) {
                for (int v = u + 1; v <= graph.n; ++v) {
                    if (x[u - 1] == x[v - 1] && !graph.has_edge(u, v)) return false;
                }
            }
            return true;
        }
        case ProblemKind::MinEdgeColoring: {
            const Graph lg = graph.line_graph();
            for (const auto& [e, f] : lg.edges) {
                if (x[e - 1] == x[f - 1]) return false;
            }
            return true;
        }
        case ProblemKind::Tsp: {
            std::vector<int> seen(tsp.n + 1, 0);
            for (int u : x) {
                if (u < 1 || u > tsp.n || seen[u]++) return false;
            }
            if (tsp.fix_first_city && x[0] != 1) return false;
            return true;
        }
        case ProblemKind::SmsTotalTardiness: {
            // Compact no-idle schedules: starts, sorted, chain exactly.
            std::vector<int> order(sms.n());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
            int t = 0;
            for (int job : order) {
                if (x[job] != t) return false;
                t += sms.p[job];
            }
            return true;
        }
        case ProblemKind::SmsReleaseDates: {
            const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(true);
            for (int i = 0; i < sms.n(); ++i) {
                const int ri = sms.r.empty() ? 0 : sms.r[i];
                if (x[i] < h && x[i] < ri) return false;
                for (int j = i + 1; j < sms.n(); ++j) {
                    if (x[i] >= h || x[j] >= h) continue;  // buffered jobs never overlap
                    const int ei = x[i] + sms.p[i], ej = x[j] + sms.p[j];
                    if (x[i] < ej && x[j] < ei) return false;
                }
            }
            return true;
        }
    }
    throw std::logic_error("unhandled kind");
}

std::string ProblemInstance::fingerprint() const {
    std::ostringstream os;
    os << kind_name(kind) << '|' << (sense == Sense::Maximize ? "max" : "min") << '|';
    os << graph.n << ';';
    for (const auto& [u, v] : graph.edges) os << u << ',' << v << ';';
    for (double w : graph.weights) os << w << ';';
    os << "k" << kappa << '|' << sat.n_vars << '|';
    for (const auto& c : sat.clauses) {
        for (int l : c) os << l << ',';
        os << ';';
    }
    os << sets.universe << '|';
    for (const auto& s : sets.subsets) {
        for (int e : s) os << e << ',';
        os << ';';
    }
    os << tsp.n << '|';
    for (const auto& row : tsp.dist)
        for (double v : row) os << v << ',';
    for (int v : sms.p) os << v << ',';
    for (int v : sms.d) os << v << ',';
    for (int v : sms.r) os << v << ',';
    for (double v : sms.w) os << v << ',';
    os << sms.horizon;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

BruteForceResult brute_force_optimum(const ProblemInstance& inst) {
    const std::uint64_t total = inst.config_space_size();
    if (total > 10'000'000ull)
        throw std::invalid_argument("brute_force_optimum: configuration space exceeds cap");
    BruteForceResult res;
    bool found = false;
    const bool maximize = inst.sense == Sense::Maximize;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Configuration cfg = inst.config(i);
        if (!inst.is_feasible(cfg)) continue;
        const double v = inst.objective(cfg);
        if (!found || (maximize ? v > res.optimum : v < res.optimum)) {
            res.optimum = v;
            res.argopt.clear();
            found = true;
        }
        if (v == res.optimum) res.argopt.push_back(cfg);
    }
    if (!found) throw std::runtime_error("brute_force_optimum: no feasible configuration");
    return res;
}

bool has_reduction(ProblemKind k) {
    switch (k) {
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::SetSplitting:
        case ProblemKind::MinEdgeColoring:
            return true;
        default:
            return false;
    }
}

ProblemInstance reduce(const ProblemInstance& inst) {
    ProblemInstance out;
    switch (inst.kind) {
        case ProblemKind::MaxClique: {
            // Cliques are independent sets of the complement graph.
            out.kind = ProblemKind::MaxIndependentSet;
            out.sense = Sense::Maximize;
            out.graph = inst.graph.complement();
            out.graph.vertex_weights = inst.graph.vertex_weights;
            return out;
        }
        case ProblemKind::MinVertexCover: {
            // V' covers iff V \ V' is independent; optimum = n - MIS optimum.
            out.kind = ProblemKind::MaxIndependentSet;
            out.sense = Sense::Maximize;
            out.graph = inst.graph;
            return out;
        }
        case ProblemKind::MinCliqueCover: {
            // Clique covers of G are proper colorings of the complement.
            out.kind = ProblemKind::MinGraphColoring;
            out.sense = Sense::Minimize;
            out.graph = inst.graph.complement();
            out.kappa = inst.kappa;
            return out;
        }
        case ProblemKind::SetSplitting: {
            // Special case of NAE-SAT with no negated variables.
            out.kind = ProblemKind::NaeLSat;
            out.sense = Sense::Maximize;
            out.sat.n_vars = inst.sets.universe;
            for (const auto& s : inst.sets.subsets) out.sat.clauses.push_back(s);
            return out;
        }
        case ProblemKind::MinEdgeColoring: {
            out.kind = ProblemKind::MinGraphColoring;
            out.sense = Sense::Minimize;
            out.graph = inst.graph.line_graph();
            out.kappa = inst.kappa;
            return out;
        }
        default:
            throw std::invalid_argument(std::string("no reduction for kind ") +
                                        kind_name(inst.kind));
    }
}

Configuration ReductionMap::pullback(const Configuration& image_cfg) const {
    Configuration out = image_cfg;
    if (flip_bits) {
        for (int& v : out.values) v = 1 - v;
    }
    return out;
}

ReductionMap reduce_with_map(const ProblemInstance& inst) {
    ReductionMap map;
    map.image = reduce(inst);
    if (inst.kind == ProblemKind::MinVertexCover) {
        // V' covers iff V \ V' is independent: f_cover = n - f_mis.
        map.value_scale = -1.0;
        map.value_offset = inst.graph.n;
        map.flip_bits = true;
    }
    return map;
}

bool pipeline_via_reduction(ProblemKind k) {
    switch (k) {
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
            return true;
        default:
            return false;
    }
}

Encoding default_encoding(const ProblemInstance& inst) {
    switch (space_family(inst.kind)) {
        case SpaceFamily::Bits:
            return Encoding::binary(2, n_binary_vars(inst));
        case SpaceFamily::Dits:
            return Encoding::one_hot(dit_alphabet(inst), n_dit_registers(inst));
        case SpaceFamily::Ordering:
            return Encoding::direct_one_hot(inst.tsp.n);
        case SpaceFamily::OrderingSlack: {
            Encoding e = Encoding::direct_one_hot(inst.sms.n());
            for (int s : sms_slack_ranges(inst.sms)) e.slack_bits.push_back(ceil_log2_count(s));
            return e;
        }
        case SpaceFamily::CompactSchedule:
        case SpaceFamily::WindowSchedule:
            return Encoding::absolute_one_hot(sms_windows(inst));
    }
    throw std::logic_error("unhandled kind");
}

std::vector<basis_t> enumerate_feasible(const ProblemInstance& inst, const Encoding& enc) {
    const std::uint64_t total = inst.config_space_size();
    if (total > 10'000'000ull)
        throw std::invalid_argument("enumerate_feasible: configuration space exceeds cap");
    std::vector<basis_t> out;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Configuration cfg = inst.config(i);
        if (!inst.is_feasible(cfg)) continue;
        out.push_back(enc.encode(cfg));
        if (out.size() > 1'000'000ull)
            throw std::invalid_argument("enumerate_feasible: feasible set exceeds cap");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> proper_edge_coloring(const Graph& g) {
    const int m = g.m();
    std::vector<int> color(m, -1);
    if (m == 0) return color;
    const int classes = g.max_degree() + 1;

    // Incidence test between edges e and f.
    auto incident = [&](int e, int f) {
        const auto& [a, b] = g.edges[e];
        const auto& [c, d] = g.edges[f];
        return a == c || a == d || b == c || b == d;
    };

    // Backtracking with the Vizing bound; existence is guaranteed, and desk
    // scale keeps the search shallow.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::function<bool(int)> assign = [&](int k) -> bool {
        if (k == m) return true;
        const int e = order[k];
        for (int c = 0; c < classes; ++c) {
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                if (color[order[j]] == c && incident(e, order[j])) ok = false;
            }
            if (!ok) continue;
            color[e] = c;
            if (assign(k + 1)) return true;
            color[e] = -1;
        }
        return false;
    };
    if (!assign(0)) throw std::logic_error("edge coloring search failed");
    return color;
}

std::vector<int> greedy_coloring(const Graph& g) {
    std::vector<int> color(g.n, -1);
    for (int v = 1; v <= g.n; ++v) {
        std::set<int> used;
        for (int w : g.neighbors(v)) {
            if (color[w - 1] >= 0) used.insert(color[w - 1]);
        }
        int c = 0;
        while (used.count(c)) ++c;
        color[v - 1] = c;
    }
    return color;
}

Configuration initial_configuration(const ProblemInstance& inst) {
    Configuration cfg;
    switch (inst.kind) {
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MaxSetPacking:
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(n_binary_vars(inst), 0);  // empty subset
            return cfg;
        case ProblemKind::MinVertexCover:
        case ProblemKind::MinSetCover:
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(n_binary_vars(inst), 1);  // full subset
            return cfg;
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection: {
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(inst.graph.n, 0);
            for (int v = 0; v < inst.graph.n / 2; ++v) cfg.values[v] = 1;
            return cfg;
        }
        case ProblemKind::MaxVertexKCover: {
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(inst.graph.n, 0);
            for (int v = 0; v < inst.kappa; ++v) cfg.values[v] = 1;
            return cfg;
        }
        case ProblemKind::MaxColorableSubgraph:
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(inst.graph.n, 0);  // all vertices the same color
            return cfg;
        case ProblemKind::MaxColorableInducedSubgraph:
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(inst.graph.n, 0);  // all uncolored
            return cfg;
        case ProblemKind::MinGraphColoring: {
            cfg.kind = Configuration::Kind::Dits;
            cfg.values = greedy_coloring(inst.graph);
            return cfg;
        }
        case ProblemKind::MinCliqueCover: {
            cfg.kind = Configuration::Kind::Dits;
            cfg.values = greedy_coloring(inst.graph.complement());
            return cfg;
        }
        case ProblemKind::MinEdgeColoring: {
            cfg.kind = Configuration::Kind::Dits;
            cfg.values = greedy_coloring(inst.graph.line_graph());
            return cfg;
        }
        case ProblemKind::Tsp: {
            cfg.kind = Configuration::Kind::Ordering;
            cfg.values.resize(inst.tsp.n);
            std::iota(cfg.values.begin(), cfg.values.end(), 1);
            return cfg;
        }
        case ProblemKind::SmsSquaredTardiness: {
            cfg.kind = Configuration::Kind::Ordering;
            cfg.values.resize(inst.sms.n());
            std::iota(cfg.values.begin(), cfg.values.end(), 1);
            cfg.slack.assign(inst.sms.n(), 0);
            return cfg;
        }
        case ProblemKind::SmsTotalTardiness: {
            cfg.kind = Configuration::Kind::Schedule;
            std::vector<int> order(inst.sms.n());
            std::iota(order.begin(), order.end(), 1);
            cfg.values = schedule_from_ordering(order, inst.sms.p);
            return cfg;
        }
        case ProblemKind::SmsReleaseDates: {
            // Greedy earliest-release-date schedule.
            cfg.kind = Configuration::Kind::Schedule;
            const SmsData& sms = inst.sms;
            std::vector<int> order(sms.n());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                const int ra = sms.r.empty() ? 0 : sms.r[a];
                const int rb = sms.r.empty() ? 0 : sms.r[b];
                return std::tie(ra, a) < std::tie(rb, b);
            });
            cfg.values.assign(sms.n(), 0);
            int t = 0;
            for (int j : order) {
                const int rj = sms.r.empty() ? 0 : sms.r[j];
                cfg.values[j] = std::max(rj, t);
                t = cfg.values[j] + sms.p[j];
            }
            return cfg;
        }
        default: {
            // Bit-flip family: the |+...+> recipe is handled at assembly;
            // the basis fallback is the all-zero string.
            cfg.kind = Configuration::Kind::Dits;
            cfg.values.assign(n_binary_vars(inst), 0);
            return cfg;
        }
    }
}

}  // namespace qaoakit
