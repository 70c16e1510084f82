#include "qaoakit/phase.hpp"

#include "qaoakit/mixers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qaoakit {

void Polynomial::add(std::vector<int> vars, double coeff) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    terms[vars] += coeff;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out;
    for (const auto& [va, ca] : terms) {
        for (const auto& [vb, cb] : other.terms) {
            std::vector<int> merged = va;
            merged.insert(merged.end(), vb.begin(), vb.end());
            out.add(std::move(merged), ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [v, c] : other.terms) out.terms[v] += c;
    return out;
}

double Polynomial::eval(basis_t assignment) const {
    double acc = 0.0;
    for (const auto& [vars, c] : terms) {
        bool all = true;
        for (int q : vars) {
            if (!((assignment >> q) & 1)) {
                all = false;
                break;
            }
        }
        if (all) acc += c;
    }
    return acc;
}

Polynomial Polynomial::constant(double c) {
    Polynomial p;
    p.terms[{}] = c;
    return p;
}

Polynomial Polynomial::var(int q) {
    Polynomial p;
    p.terms[{q}] = 1.0;
    return p;
}

double ZTerms::eval(basis_t assignment) const {
    double acc = 0.0;
    for (const auto& [qs, c] : terms) {
        int parity = 0;
        for (int q : qs) parity ^= static_cast<int>((assignment >> q) & 1);
        acc += parity ? -c : c;
    }
    return acc;
}

ZTerms pseudo_boolean_to_z_terms(const Polynomial& poly) {
    ZTerms out;
    for (const auto& [vars, coeff] : poly.terms) {
        if (vars.size() > 4)
            throw std::invalid_argument("pseudo_boolean_to_z_terms: degree above cap");
        // Product of (I - Z_q)/2 expands over subsets with sign (-1)^|S|.
        const std::size_t k = vars.size();
        const double base = coeff / static_cast<double>(std::size_t{1} << k);
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            std::vector<int> subset;
            int bits = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if ((mask >> i) & 1) {
                    subset.push_back(vars[i]);
                    ++bits;
                }
            }
            out.terms[subset] += (bits & 1) ? -base : base;
        }
    }
    // Sweep exact zeros introduced by cancellation.
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (std::abs(it->second) < 1e-14 && !it->first.empty())
            it = out.terms.erase(it);
        else
            ++it;
    }
    return out;
}

namespace {

// Qubit groups whose Z-sum is constant on every codeword, with that constant.
std::vector<std::pair<std::vector<int>, int>> droppable_groups(const Encoding& enc) {
    std::vector<std::pair<std::vector<int>, int>> groups;
    switch (enc.scheme) {
        case Encoding::Scheme::OneHot: {
            for (int r = 0; r < enc.n_registers; ++r) {
                std::vector<int> qs(enc.d);
                std::iota(qs.begin(), qs.end(), enc.register_base(r));
                groups.push_back({std::move(qs), enc.d - 2});
            }
            break;
        }
        case Encoding::Scheme::DirectOneHot: {
            const int n = enc.d;
            for (int slot = 0; slot < n; ++slot) {  // row sums
                std::vector<int> qs(n);
                std::iota(qs.begin(), qs.end(), slot * n);
                groups.push_back({std::move(qs), n - 2});
            }
            for (int item = 0; item < n; ++item) {  // column sums
                std::vector<int> qs;
                for (int slot = 0; slot < n; ++slot) qs.push_back(slot * n + item);
                groups.push_back({std::move(qs), n - 2});
            }
            break;
        }
        case Encoding::Scheme::AbsoluteOneHot: {
            for (int r = 0; r < enc.n_registers; ++r) {
                const int w = static_cast<int>(enc.windows[r].size());
                std::vector<int> qs(w);
                std::iota(qs.begin(), qs.end(), enc.register_base(r));
                groups.push_back({std::move(qs), w - 2});
            }
            break;
        }
        case Encoding::Scheme::Binary:
            break;
    }
    return groups;
}

}  // namespace

AffineReduceResult affine_reduce(const ZTerms& z, const Encoding& enc) {
    AffineReduceResult res;
    res.reduced = z;
    double constant = 0.0;

    // Identity term is a global phase.
    if (auto it = res.reduced.terms.find({}); it != res.reduced.terms.end()) {
        constant += it->second;
        res.reduced.terms.erase(it);
    }

    // Per-register Z sums with a uniform coefficient are constant on codewords.
    for (const auto& [qs, value] : droppable_groups(enc)) {
        bool uniform = true;
        double c0 = 0.0;
        bool first = true;
        for (int q : qs) {
            auto it = res.reduced.terms.find(std::vector<int>{q});
            const double c = (it == res.reduced.terms.end()) ? 0.0 : it->second;
            if (first) {
                c0 = c;
                first = false;
            } else if (std::abs(c - c0) > 1e-12) {
                uniform = false;
                break;
            }
        }
        if (!uniform || std::abs(c0) < 1e-14) continue;
        for (int q : qs) res.reduced.terms.erase(std::vector<int>{q});
        constant += c0 * value;
    }

    // Normalize: divide by the signed common coefficient when all agree, else
    // by the common magnitude when only the signs differ.
    double divisor = 1.0;
    if (!res.reduced.terms.empty()) {
        const double first = res.reduced.terms.begin()->second;
        bool all_equal = true, all_same_mag = true;
        for (const auto& [qs, c] : res.reduced.terms) {
            if (std::abs(c - first) > 1e-12) all_equal = false;
            if (std::abs(std::abs(c) - std::abs(first)) > 1e-12) all_same_mag = false;
        }
        if (all_equal)
            divisor = first;
        else if (all_same_mag)
            divisor = std::abs(first);
    }
    if (divisor != 1.0) {
        for (auto& [qs, c] : res.reduced.terms) c /= divisor;
    }

    // H_reduced = (H_f - constant) / divisor = (1/divisor) f - constant/divisor.
    res.affine.scale = 1.0 / divisor;
    res.affine.offset = -constant / divisor;
    return res;
}

std::vector<GatePrimitive> z_terms_to_gates(const ZTerms& z) {
    std::vector<GatePrimitive> gates;
    for (const auto& [qs, c] : z.terms) {
        if (qs.empty()) continue;
        GatePrimitive g;
        g.kind = qs.size() == 1 ? GateKind::RZ : GateKind::MultiZ;
        g.targets = qs;
        g.angle = AngleRole::gamma(1, c);
        g.section = GatePrimitive::Section::Phase;
        gates.push_back(std::move(g));
    }
    return gates;
}

namespace {

int oh_qubit(const Encoding& enc, int reg, int value) { return enc.register_base(reg) + value; }

// Direct one-hot qubit for (slot j, item u), both 1-based.
int slot_item_qubit(int n, int slot, int item) { return (slot - 1) * n + (item - 1); }

GatePrimitive zz_gate(int q0, int q1, double coeff) {
    GatePrimitive g;
    g.kind = GateKind::MultiZ;
    g.targets = {q0, q1};
    g.angle = AngleRole::gamma(1, coeff);
    g.section = GatePrimitive::Section::Phase;
    return g;
}

GatePrimitive rz_gate(int q, double coeff) {
    GatePrimitive g;
    g.kind = GateKind::RZ;
    g.targets = {q};
    g.angle = AngleRole::gamma(1, coeff);
    g.section = GatePrimitive::Section::Phase;
    return g;
}

// Emits 2-qubit Z gates ordered by a proper edge coloring so that greedy
// layering meets the D_G + 1 depth bound.
void emit_edge_zz(const Graph& g, const std::function<void(int, double)>& emit_edge) {
    const std::vector<int> color = proper_edge_coloring(g);
    const int classes = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
    for (int c = 0; c < classes; ++c) {
        for (int e = 0; e < g.m(); ++e) {
            if (color[e] == c) emit_edge(e, g.weight(e));
        }
    }
}

double total_edge_weight(const Graph& g) {
    double w = 0.0;
    for (int e = 0; e < g.m(); ++e) w += g.weight(e);
    return w;
}

}  // namespace

PhaseSeparator build_phase_separator(const ProblemInstance& inst, const Encoding& enc) {
    PhaseSeparator sep;
    const ProblemKind kind = inst.kind;

    switch (kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection: {
            const Graph& g = inst.graph;
            emit_edge_zz(g, [&](int e, double w) {
                const auto& [u, v] = g.edges[e];
                sep.encoded.push_back(zz_gate(u - 1, v - 1, w));
            });
            sep.affine = {-2.0, total_edge_weight(g)};
            break;
        }
        case ProblemKind::DirectedMaxCut: {
            const Graph& g = inst.graph;
            std::vector<double> lin(g.n, 0.0);
            for (int e = 0; e < g.m(); ++e) {
                const auto& [u, v] = g.edges[e];
                lin[u - 1] += g.weight(e);
                lin[v - 1] -= g.weight(e);
            }
            for (int v = 0; v < g.n; ++v) {
                if (std::abs(lin[v]) > 1e-14) sep.encoded.push_back(rz_gate(v, lin[v]));
            }
            emit_edge_zz(g, [&](int e, double w) {
                const auto& [u, v] = g.edges[e];
                sep.encoded.push_back(zz_gate(u - 1, v - 1, w));
            });
            sep.affine = {-4.0, total_edge_weight(g)};
            break;
        }
        case ProblemKind::E3Lin2: {
            for (const auto& eq : inst.sat.clauses) {
                GatePrimitive g;
                g.kind = GateKind::MultiZ;
                g.targets = {eq[0] - 1, eq[1] - 1, eq[2] - 1};
                g.angle = AngleRole::gamma(1, eq[3] ? -1.0 : 1.0);
                g.section = GatePrimitive::Section::Phase;
                sep.encoded.push_back(std::move(g));
            }
            sep.affine = {2.0, -static_cast<double>(inst.sat.clauses.size())};
            break;
        }
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat:
        case ProblemKind::NaeLSat: {
            // One diagonal-phase gate per clause; the explicit Z expansion is
            // only bounded, not given, in the compendium.
            const bool nae = kind == ProblemKind::NaeLSat;
            for (const auto& clause : inst.sat.clauses) {
                GatePrimitive g;
                g.kind = GateKind::DiagPhase;
                for (int lit : clause) g.targets.push_back(std::abs(lit) - 1);
                std::vector<int> lits = clause;
                const int k = static_cast<int>(lits.size());
                g.diag = make_diag_fn(
                    [lits, k, nae](basis_t sub) -> double {
                        bool any_true = false, any_false = false;
                        for (int i = 0; i < k; ++i) {
                            bool val = (sub >> i) & 1;
                            if (lits[i] < 0) val = !val;
                            (val ? any_true : any_false) = true;
                        }
                        if (nae) return (any_true && any_false) ? 1.0 : 0.0;
                        return any_true ? 1.0 : 0.0;
                    },
                    k);
                g.angle = AngleRole::gamma(1, 1.0);
                g.section = GatePrimitive::Section::Phase;
                sep.encoded.push_back(std::move(g));
            }
            sep.affine = {1.0, 0.0};
            sep.notes.push_back("phase bound: O(m 2^l) two-qubit gates (Z expansion)");
            break;
        }
        case ProblemKind::SetSplitting: {
            for (const auto& subset : inst.sets.subsets) {
                GatePrimitive g;
                g.kind = GateKind::DiagPhase;
                for (int e : subset) g.targets.push_back(e - 1);
                const int k = static_cast<int>(subset.size());
                g.diag = make_diag_fn(
                    [k](basis_t sub) -> double {
                        const basis_t full = (basis_t{1} << k) - 1;
                        return (sub != 0 && sub != full) ? 1.0 : 0.0;
                    },
                    k);
                g.angle = AngleRole::gamma(1, 1.0);
                g.section = GatePrimitive::Section::Phase;
                sep.encoded.push_back(std::move(g));
            }
            sep.affine = {1.0, 0.0};
            break;
        }
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover: {
            const Graph& g = inst.graph;
            double wsum = 0.0;
            for (int v = 0; v < g.n; ++v) {
                const double w = g.vertex_weights.empty() ? 1.0 : g.vertex_weights[v];
                sep.encoded.push_back(rz_gate(v, w));
                wsum += w;
            }
            sep.affine = {-2.0, wsum};
            break;
        }
        case ProblemKind::MaxSetPacking:
        case ProblemKind::MinSetCover: {
            const int m = static_cast<int>(inst.sets.subsets.size());
            for (int j = 0; j < m; ++j) sep.encoded.push_back(rz_gate(j, 1.0));
            sep.affine = {-2.0, static_cast<double>(m)};
            break;
        }
        case ProblemKind::MaxVertexKCover: {
            const Graph& g = inst.graph;
            std::vector<double> lin(g.n, 0.0);
            for (int e = 0; e < g.m(); ++e) {
                const auto& [u, v] = g.edges[e];
                lin[u - 1] += g.weight(e);
                lin[v - 1] += g.weight(e);
            }
            for (int v = 0; v < g.n; ++v) {
                if (std::abs(lin[v]) > 1e-14) sep.encoded.push_back(rz_gate(v, lin[v]));
            }
            emit_edge_zz(g, [&](int e, double w) {
                const auto& [u, v] = g.edges[e];
                sep.encoded.push_back(zz_gate(u - 1, v - 1, w));
            });
            sep.affine = {-4.0, 3.0 * total_edge_weight(g)};
            break;
        }
        case ProblemKind::MaxColorableSubgraph: {
            const Graph& g = inst.graph;
            const int kappa = inst.kappa;
            if (enc.scheme == Encoding::Scheme::OneHot) {
                const std::vector<int> color = proper_edge_coloring(g);
                const int classes =
                    color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
                for (int c = 0; c < classes; ++c) {
                    for (int e = 0; e < g.m(); ++e) {
                        if (color[e] != c) continue;
                        const auto& [u, v] = g.edges[e];
                        for (int a = 0; a < kappa; ++a) {
                            sep.encoded.push_back(zz_gate(oh_qubit(enc, u - 1, a),
                                                          oh_qubit(enc, v - 1, a), g.weight(e)));
                        }
                    }
                }
                sep.affine = {-4.0, kappa * total_edge_weight(g)};
            } else if (enc.scheme == Encoding::Scheme::Binary) {
                // Compute x_u XOR x_v into register v, phase on all-zero, uncompute.
                const int l = enc.bits_per_register(0);
                for (int e = 0; e < g.m(); ++e) {
                    const auto& [u, v] = g.edges[e];
                    std::vector<GatePrimitive> cnots;
                    for (int k = 0; k < l; ++k) {
                        GatePrimitive cx;
                        cx.kind = GateKind::PauliX;
                        cx.targets = {enc.register_base(v - 1) + k};
                        cx.controls = {{enc.register_base(u - 1) + k, 1}};
                        cx.section = GatePrimitive::Section::Phase;
                        cnots.push_back(cx);
                    }
                    for (const auto& cx : cnots) sep.encoded.push_back(cx);
                    GatePrimitive ph;
                    ph.kind = GateKind::CPhase;
                    for (int k = 0; k < l; ++k)
                        ph.controls.push_back({enc.register_base(v - 1) + k, 0});
                    ph.angle = AngleRole::gamma(1, g.weight(e));
                    ph.section = GatePrimitive::Section::Phase;
                    sep.encoded.push_back(std::move(ph));
                    for (const auto& cx : cnots) sep.encoded.push_back(cx);
                }
                // Phase applied on equal endpoints: counts m - f.
                sep.affine = {-1.0, total_edge_weight(g)};
            } else {
                throw std::invalid_argument("unsupported encoding for max-colorable-subgraph");
            }
            break;
        }
        case ProblemKind::MaxColorableInducedSubgraph: {
            for (int v = 0; v < inst.graph.n; ++v)
                sep.encoded.push_back(rz_gate(oh_qubit(enc, v, 0), 1.0));
            // sum_v Z_{v,0} acts as 2 f - n on codewords.
            sep.affine = {2.0, -static_cast<double>(inst.graph.n)};
            break;
        }
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring: {
            const int kappa = inst.coloring_alphabet();
            const int n = enc.n_registers;
            for (int a = 0; a < kappa; ++a) {
                GatePrimitive g;
                g.kind = GateKind::CPhase;
                for (int v = 0; v < n; ++v) g.controls.push_back({oh_qubit(enc, v, a), 0});
                g.angle = AngleRole::gamma(1, 1.0);
                g.section = GatePrimitive::Section::Phase;
                sep.encoded.push_back(std::move(g));
            }
            // Counts colors *not* used: kappa - f.
            sep.affine = {-1.0, static_cast<double>(kappa)};
            break;
        }
        case ProblemKind::Tsp: {
            const int n = inst.tsp.n;
            double dsum = 0.0;
            for (int u = 1; u <= n; ++u)
                for (int v = 1; v <= n; ++v)
                    if (u != v) dsum += inst.tsp.dist[u - 1][v - 1];
            // Grouped by (K_n color of {u,v}, slot parity) so commuting terms land
            // in common layers.
            const auto parts = edge_coloring_complete_graph(n);
            for (const auto& part : parts) {
                for (int parity = 0; parity < 3; ++parity) {
                    for (int i = 1; i <= n; ++i) {
                        const int cls = (i == n && n % 2 == 1) ? 2 : (i % 2 == 1 ? 0 : 1);
                        if (n == 1 || cls != parity) continue;
                        const int j = i % n + 1;
                        for (const auto& [u, v] : part) {
                            const double duv = inst.tsp.dist[u - 1][v - 1];
                            const double dvu = inst.tsp.dist[v - 1][u - 1];
                            sep.encoded.push_back(zz_gate(slot_item_qubit(n, i, u),
                                                          slot_item_qubit(n, j, v), duv));
                            sep.encoded.push_back(zz_gate(slot_item_qubit(n, i, v),
                                                          slot_item_qubit(n, j, u), dvu));
                        }
                    }
                }
            }
            sep.affine = {4.0, (n - 4.0) * dsum};
            break;
        }
        case ProblemKind::SmsTotalTardiness:
        case ProblemKind::SmsReleaseDates: {
            const SmsData& sms = inst.sms;
            const bool release = kind == ProblemKind::SmsReleaseDates;
            const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(release);
            double csum = 0.0;
            for (int i = 0; i < sms.n(); ++i) {
                const auto& window = enc.windows[i];
                for (std::size_t k = 0; k < window.size(); ++k) {
                    const int t = window[k];
                    double coeff = 0.0;
                    if (t >= h) {  // buffer slot
                        coeff = sms.w[i] * (sms.buffer_phase
                                                ? *sms.buffer_phase
                                                : static_cast<double>(t - sms.d[i]));
                    } else if (t + sms.p[i] > sms.d[i]) {
                        coeff = sms.w[i] * (t + sms.p[i] - sms.d[i]);
                    }
                    if (std::abs(coeff) < 1e-14) continue;
                    sep.encoded.push_back(
                        rz_gate(enc.register_base(i) + static_cast<int>(k), coeff));
                    csum += coeff;
                }
            }
            sep.affine = {-2.0, csum};
            break;
        }
        case ProblemKind::SmsSquaredTardiness: {
            // Cubic pseudo-Boolean objective expanded to Z monomials.
            const SmsData& sms = inst.sms;
            const int n = sms.n();
            Polynomial f;
            for (int i = 1; i <= n; ++i) {
                Polynomial s_i;  // start time of job i
                for (int alpha = 2; alpha <= n; ++alpha) {
                    for (int j = 1; j <= n; ++j) {
                        if (j == i) continue;
                        for (int beta = 1; beta < alpha; ++beta) {
                            Polynomial term = Polynomial::var(slot_item_qubit(n, alpha, i)) *
                                              Polynomial::var(slot_item_qubit(n, beta, j));
                            for (auto& [vars, c] : term.terms) c *= sms.p[j - 1];
                            s_i = s_i + term;
                        }
                    }
                }
                Polynomial y_i;
                for (int b = 0; b < enc.slack_bits[i - 1]; ++b) {
                    Polynomial bit = Polynomial::var(enc.slack_base(i - 1) + b);
                    for (auto& [vars, c] : bit.terms) c *= static_cast<double>(1 << b);
                    y_i = y_i + bit;
                }
                Polynomial expr =
                    s_i + y_i + Polynomial::constant(sms.p[i - 1] - sms.d[i - 1]);
                Polynomial sq = expr * expr;
                for (auto& [vars, c] : sq.terms) c *= sms.w[i - 1];
                f = f + sq;
            }
            const ZTerms z = pseudo_boolean_to_z_terms(f);
            AffineReduceResult red = affine_reduce(z, enc);
            sep.encoded = z_terms_to_gates(red.reduced);
            sep.affine = red.affine;
            break;
        }
    }

    sep.has_encoded = !sep.encoded.empty();

    // Semantic phase function: scale*f + offset on decodable indices, 0 off
    // the code space.
    const AffineMap affine = sep.affine;
    const Encoding enc_copy = enc;
    const ProblemInstance inst_copy = inst;
    // Function handle only; the semantic DiagPhase gate caches its own table.
    sep.g = make_diag_fn(
        [inst_copy, enc_copy, affine](basis_t x) -> double {
            const auto cfg = enc_copy.decode(x);
            if (!cfg) return 0.0;
            return affine.scale * inst_copy.objective(*cfg) + affine.offset;
        },
        enc.n_qubits(), /*cache=*/false);
    return sep;
}

}  // namespace qaoakit
