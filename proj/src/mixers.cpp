#include "qaoakit/mixers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qaoakit {

namespace {

int oh_qubit(const Encoding& enc, int reg, int value) { return enc.register_base(reg) + value; }

int slot_item_qubit(int n, int slot, int item) { return (slot - 1) * n + (item - 1); }

int window_qubit(const Encoding& enc, int reg, int t) {
    const auto& w = enc.windows[reg];
    const auto it = std::find(w.begin(), w.end(), t);
    if (it == w.end()) throw std::logic_error("time outside window");
    return enc.register_base(reg) + static_cast<int>(it - w.begin());
}

// Position parity class: 0 odd, 1 even, 2 the wrap term of an odd-length ring.
int parity_class(int i_1based, int count, bool cyclic) {
    if (cyclic && count % 2 == 1 && i_1based == count) return 2;
    return (i_1based % 2 == 1) ? 0 : 1;
}

std::string pair_text(int a, int b) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

const char* mixer_kind_name(MixerKind k) {
    switch (k) {
        case MixerKind::BitFlipX: return "x";
        case MixerKind::Ring: return "ring";
        case MixerKind::NearbyValues: return "nearby-values";
        case MixerKind::FullyConnected: return "fully-connected";
        case MixerKind::BinaryParity: return "binary-parity";
        case MixerKind::HammingRing: return "hamming-ring";
        case MixerKind::ControlledX: return "controlled-x";
        case MixerKind::NullSwap: return "null-swap";
        case MixerKind::ControlledSwap: return "controlled-swap";
        case MixerKind::OrderingSwap: return "ordering-swap";
        case MixerKind::TimeSwap: return "time-swap";
        case MixerKind::ReleaseNullSwap: return "release-null-swap";
    }
    return "?";
}

const char* partition_strategy_name(PartitionStrategy s) {
    switch (s) {
        case PartitionStrategy::Singleton: return "singleton";
        case PartitionStrategy::Parity: return "parity";
        case PartitionStrategy::Color: return "color";
        case PartitionStrategy::ColorParity: return "color-parity";
        case PartitionStrategy::TimeColor: return "time-color";
        case PartitionStrategy::GreedyCommuting: return "greedy";
    }
    return "?";
}

std::optional<MixerKind> mixer_kind_from_name(const std::string& s) {
    for (MixerKind k :
         {MixerKind::BitFlipX, MixerKind::Ring, MixerKind::NearbyValues,
          MixerKind::FullyConnected, MixerKind::BinaryParity, MixerKind::HammingRing,
          MixerKind::ControlledX, MixerKind::NullSwap, MixerKind::ControlledSwap,
          MixerKind::OrderingSwap, MixerKind::TimeSwap, MixerKind::ReleaseNullSwap}) {
        if (s == mixer_kind_name(k)) return k;
    }
    return std::nullopt;
}

std::optional<PartitionStrategy> partition_strategy_from_name(const std::string& s) {
    for (PartitionStrategy p :
         {PartitionStrategy::Singleton, PartitionStrategy::Parity, PartitionStrategy::Color,
          PartitionStrategy::ColorParity, PartitionStrategy::TimeColor,
          PartitionStrategy::GreedyCommuting}) {
        if (s == partition_strategy_name(p)) return p;
    }
    return std::nullopt;
}

std::vector<int> PartialMixer::support() const {
    std::set<int> qs;
    for (const auto& t : generator) qs.insert(t.qubits.begin(), t.qubits.end());
    return {qs.begin(), qs.end()};
}

std::vector<int> PartialMixer::control_support() const {
    std::set<int> qs;
    for (const auto& t : generator) {
        const auto cs = t.control_support();
        qs.insert(cs.begin(), cs.end());
    }
    return {qs.begin(), qs.end()};
}

int OrderedPartition::total() const {
    int n = 0;
    for (const auto& p : parts) n += static_cast<int>(p.size());
    return n;
}

namespace {

bool structurally_commute(const PartialMixer& a, const PartialMixer& b) {
    const auto ta = a.support(), tb = b.support();
    const auto ca = a.control_support(), cb = b.control_support();
    auto intersects = [](const std::vector<int>& x, const std::vector<int>& y) {
        for (int q : x) {
            if (std::binary_search(y.begin(), y.end(), q)) return true;
        }
        return false;
    };
    return !intersects(ta, tb) && !intersects(ta, cb) && !intersects(tb, ca);
}

}  // namespace

bool OrderedPartition::commuting_within_parts() const {
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            for (std::size_t j = i + 1; j < part.size(); ++j) {
                if (!structurally_commute(part[i], part[j])) return false;
            }
        }
    }
    return true;
}

// ------------------------------------------------------------- catalogs ---

namespace {

// Distinct stride-s ring pairs (a, a+s mod d), sorted by a.
std::vector<std::pair<int, int>> ring_pairs(int d, int s) {
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> seen;
    for (int a = 0; a < d; ++a) {
        const int b = (a + s) % d;
        auto key = std::minmax(a, b);
        if (seen.insert({key.first, key.second}).second) pairs.push_back({a, b});
    }
    return pairs;
}

PartialMixer single_qudit_mixer(const Encoding& enc, int reg, int r) {
    PartialMixer pm;
    pm.label.key = {reg, -1, -1, -1, -1};
    pm.label.name = "qudit(" + std::to_string(reg) + ")";
    for (int s = 1; s <= r; ++s) {
        for (const auto& [a, b] : ring_pairs(enc.d, s)) {
            pm.generator.push_back(HermitianTerm::two_level(
                {oh_qubit(enc, reg, a), oh_qubit(enc, reg, b)}, 0b01, 0b10, 1.0));
        }
    }
    return pm;
}

std::vector<HermitianTerm> binary_register_terms(const Encoding& enc, int reg, bool odd) {
    // Value pairs (2k, 2k+1) for even, (2k+1, 2k+2 mod d) for odd, expressed
    // as two-level couplings on the register's qubits.
    std::vector<HermitianTerm> terms;
    const int l = enc.bits_per_register(0);
    std::vector<int> qs(l);
    std::iota(qs.begin(), qs.end(), enc.register_base(reg));
    for (int k = 0; 2 * k + (odd ? 1 : 0) < enc.d; ++k) {
        const int a = 2 * k + (odd ? 1 : 0);
        const int b = (a + 1) % enc.d;
        if (a == b) continue;
        terms.push_back(HermitianTerm::two_level(qs, static_cast<basis_t>(a),
                                                 static_cast<basis_t>(b), 1.0));
    }
    return terms;
}

std::vector<std::pair<int, int>> ordering_positions(int n, bool cyclic, bool fix_first) {
    std::vector<std::pair<int, int>> pos;
    for (int i = 1; i < n; ++i) {
        if (fix_first && i == 1) continue;
        pos.push_back({i, i + 1});
    }
    if (cyclic && n > 2 && !fix_first) pos.push_back({n, 1});
    return pos;
}

}  // namespace

namespace {

// Compendium compatibility: structural encoding requirements plus the kinds
// each mixer family is cataloged for. The plain X mixer stays available on
// any register as the deliberate counterexample for the verification suite.
void check_mixer_compat(const ProblemInstance& inst, const Encoding& enc,
                        const MixerOptions& opts) {
    auto fail = [&] {
        throw std::invalid_argument(std::string(mixer_kind_name(opts.kind)) +
                                    " mixer is not cataloged for " + kind_name(inst.kind) +
                                    " with this encoding");
    };
    switch (opts.kind) {
        case MixerKind::BitFlipX:
            break;
        case MixerKind::Ring:
        case MixerKind::NearbyValues:
        case MixerKind::FullyConnected:
            if (enc.scheme != Encoding::Scheme::OneHot) fail();
            break;
        case MixerKind::BinaryParity:
            if (enc.scheme != Encoding::Scheme::Binary || (enc.d & (enc.d - 1)) != 0) fail();
            break;
        case MixerKind::HammingRing:
            if (inst.kind != ProblemKind::GraphPartitioning &&
                inst.kind != ProblemKind::MaxBisection &&
                inst.kind != ProblemKind::MaxVertexKCover)
                fail();
            break;
        case MixerKind::ControlledX:
            if (inst.kind != ProblemKind::MaxIndependentSet &&
                inst.kind != ProblemKind::MaxSetPacking &&
                inst.kind != ProblemKind::MinSetCover)
                fail();
            break;
        case MixerKind::NullSwap:
            if (inst.kind != ProblemKind::MaxColorableInducedSubgraph ||
                enc.scheme != Encoding::Scheme::OneHot)
                fail();
            break;
        case MixerKind::ControlledSwap:
            if (inst.kind != ProblemKind::MinGraphColoring ||
                enc.scheme != Encoding::Scheme::OneHot)
                fail();
            break;
        case MixerKind::OrderingSwap:
            if ((inst.kind != ProblemKind::Tsp &&
                 inst.kind != ProblemKind::SmsSquaredTardiness) ||
                enc.scheme != Encoding::Scheme::DirectOneHot)
                fail();
            break;
        case MixerKind::TimeSwap:
            if (inst.kind != ProblemKind::SmsTotalTardiness ||
                enc.scheme != Encoding::Scheme::AbsoluteOneHot)
                fail();
            break;
        case MixerKind::ReleaseNullSwap:
            if (inst.kind != ProblemKind::SmsReleaseDates ||
                enc.scheme != Encoding::Scheme::AbsoluteOneHot)
                fail();
            break;
    }
}

}  // namespace

std::vector<PartialMixer> build_partial_mixers(const ProblemInstance& inst, const Encoding& enc,
                                               const MixerOptions& opts) {
    check_mixer_compat(inst, enc, opts);
    std::vector<PartialMixer> out;
    switch (opts.kind) {
        case MixerKind::BitFlipX: {
            for (int q = 0; q < enc.n_qubits(); ++q) {
                PartialMixer pm;
                pm.label.key = {q, -1, -1, -1, -1};
                pm.label.name = "x(" + std::to_string(q) + ")";
                pm.generator.push_back(HermitianTerm::pauli_x(q));
                out.push_back(std::move(pm));
            }
            break;
        }
        case MixerKind::Ring:
        case MixerKind::NearbyValues:
        case MixerKind::FullyConnected: {
            if (enc.scheme != Encoding::Scheme::OneHot)
                throw std::invalid_argument("ring mixers require the one-hot encoding");
            int r = opts.kind == MixerKind::Ring ? 1 : opts.r;
            if (opts.kind == MixerKind::FullyConnected) r = enc.d - 1;
            if (r < 1 || r > enc.d - 1) throw std::invalid_argument("invalid nearby-values r");
            for (int reg = 0; reg < enc.n_registers; ++reg)
                out.push_back(single_qudit_mixer(enc, reg, r));
            break;
        }
        case MixerKind::BinaryParity: {
            if (enc.scheme != Encoding::Scheme::Binary)
                throw std::invalid_argument("binary-parity requires the binary encoding");
            if ((enc.d & (enc.d - 1)) != 0)
                throw std::invalid_argument("binary-parity requires d = 2^l");
            for (int reg = 0; reg < enc.n_registers; ++reg) {
                for (int odd = 1; odd >= 0; --odd) {
                    PartialMixer pm;
                    pm.label.key = {reg, 1 - odd, -1, -1, -1};
                    pm.label.name =
                        std::string(odd ? "odd(" : "even(") + std::to_string(reg) + ")";
                    pm.generator = binary_register_terms(enc, reg, odd);
                    out.push_back(std::move(pm));
                }
            }
            break;
        }
        case MixerKind::HammingRing: {
            const int n = enc.n_qubits();
            PartialMixer pm;
            pm.label.key = {0, -1, -1, -1, -1};
            pm.label.name = "hamming-ring";
            for (const auto& [a, b] : ring_pairs(n, 1))
                pm.generator.push_back(HermitianTerm::two_level({a, b}, 0b01, 0b10, 1.0));
            out.push_back(std::move(pm));
            break;
        }
        case MixerKind::ControlledX: {
            if (inst.kind == ProblemKind::MinSetCover) {
                const Graph cg = inst.constraint_graph();
                const int m = static_cast<int>(inst.sets.subsets.size());
                for (int j = 1; j <= m; ++j) {
                    PartialMixer pm;
                    pm.label.key = {j - 1, -1, -1, -1, -1};
                    pm.label.name = "cx(" + std::to_string(j) + ")";
                    HermitianTerm t = HermitianTerm::pauli_x(j - 1);
                    bool impossible = false;
                    for (int elem : inst.sets.subsets[j - 1]) {
                        std::vector<std::pair<int, int>> clause;
                        for (int l : cg.neighbors(j)) {
                            const auto& sl = inst.sets.subsets[l - 1];
                            if (std::find(sl.begin(), sl.end(), elem) != sl.end())
                                clause.push_back({l - 1, 1});
                        }
                        if (clause.empty()) impossible = true;
                        t.control_cnf.push_back(std::move(clause));
                    }
                    if (impossible) continue;  // the set is the sole cover of an element
                    pm.generator.push_back(std::move(t));
                    out.push_back(std::move(pm));
                }
                break;
            }
            const Graph g = (inst.kind == ProblemKind::MaxSetPacking) ? inst.constraint_graph()
                                                                      : inst.graph;
            for (int v = 1; v <= g.n; ++v) {
                PartialMixer pm;
                pm.label.key = {v - 1, -1, -1, -1, -1};
                pm.label.name = "cx(" + std::to_string(v) + ")";
                HermitianTerm t = HermitianTerm::pauli_x(v - 1);
                for (int w : g.neighbors(v)) t.control_cnf.push_back({{w - 1, 0}});
                pm.generator.push_back(std::move(t));
                out.push_back(std::move(pm));
            }
            break;
        }
        case MixerKind::NullSwap: {
            const int kappa = inst.kappa;
            for (int v = 1; v <= inst.graph.n; ++v) {
                for (int a = 1; a <= kappa; ++a) {
                    PartialMixer pm;
                    pm.label.key = {v - 1, a, -1, -1, -1};
                    pm.label.name = "ns(" + std::to_string(v) + "," + std::to_string(a) + ")";
                    HermitianTerm t = HermitianTerm::two_level(
                        {oh_qubit(enc, v - 1, 0), oh_qubit(enc, v - 1, a)}, 0b01, 0b10, 1.0);
                    for (int w : inst.graph.neighbors(v))
                        t.control_cnf.push_back({{oh_qubit(enc, w - 1, a), 0}});
                    pm.generator.push_back(std::move(t));
                    out.push_back(std::move(pm));
                }
            }
            break;
        }
        case MixerKind::ControlledSwap: {
            const int kappa = inst.coloring_alphabet();
            for (int v = 1; v <= enc.n_registers; ++v) {
                for (int a = 0; a < kappa; ++a) {
                    for (int b = a + 1; b < kappa; ++b) {
                        PartialMixer pm;
                        pm.label.key = {v - 1, a, b, -1, -1};
                        pm.label.name = "cs(" + std::to_string(v) + "," + pair_text(a, b) + ")";
                        HermitianTerm t = HermitianTerm::two_level(
                            {oh_qubit(enc, v - 1, a), oh_qubit(enc, v - 1, b)}, 0b01, 0b10, 1.0);
                        for (int w : inst.graph.neighbors(v)) {
                            t.control_cnf.push_back({{oh_qubit(enc, w - 1, a), 0}});
                            t.control_cnf.push_back({{oh_qubit(enc, w - 1, b), 0}});
                        }
                        pm.generator.push_back(std::move(t));
                        out.push_back(std::move(pm));
                    }
                }
            }
            break;
        }
        case MixerKind::OrderingSwap: {
            const int n = (inst.kind == ProblemKind::Tsp) ? inst.tsp.n : inst.sms.n();
            const bool fix_first = inst.kind == ProblemKind::Tsp && inst.tsp.fix_first_city;
            const auto positions = ordering_positions(n, opts.cyclic_positions, fix_first);
            for (const auto& [i, j] : positions) {
                for (int u = 1; u <= n; ++u) {
                    for (int v = u + 1; v <= n; ++v) {
                        PartialMixer pm;
                        pm.label.key = {i, u, v, -1, -1};
                        pm.label.name =
                            "ps(" + pair_text(i, j) + "," + pair_text(u, v) + ")";
                        pm.generator.push_back(HermitianTerm::two_level(
                            {slot_item_qubit(n, i, u), slot_item_qubit(n, j, v),
                             slot_item_qubit(n, j, u), slot_item_qubit(n, i, v)},
                            0b0011, 0b1100, 1.0));
                        out.push_back(std::move(pm));
                    }
                }
            }
            if (inst.kind == ProblemKind::SmsSquaredTardiness) {
                // Slack registers mix with plain X gates, in parallel.
                for (std::size_t i = 0; i < enc.slack_bits.size(); ++i) {
                    for (int b = 0; b < enc.slack_bits[i]; ++b) {
                        PartialMixer pm;
                        const int q = enc.slack_base(static_cast<int>(i)) + b;
                        pm.label.key = {n + 1 + static_cast<int>(i), b, -1, -1, -1};
                        pm.label.name = "slack-x(" + std::to_string(q) + ")";
                        pm.generator.push_back(HermitianTerm::pauli_x(q));
                        out.push_back(std::move(pm));
                    }
                }
            }
            break;
        }
        case MixerKind::TimeSwap: {
            const SmsData& sms = inst.sms;
            const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(false);
            for (int t = 0; t <= h; ++t) {
                for (int i = 1; i <= sms.n(); ++i) {
                    for (int j = i + 1; j <= sms.n(); ++j) {
                        if (t > h - sms.p[i - 1] - sms.p[j - 1]) continue;
                        PartialMixer pm;
                        pm.label.key = {t, i, j, -1, -1};
                        pm.label.name =
                            "ts(" + std::to_string(t) + "," + pair_text(i, j) + ")";
                        pm.generator.push_back(HermitianTerm::two_level(
                            {window_qubit(enc, i - 1, t), window_qubit(enc, j - 1, t + sms.p[i - 1]),
                             window_qubit(enc, i - 1, t + sms.p[j - 1]),
                             window_qubit(enc, j - 1, t)},
                            0b0011, 0b1100, 1.0));
                        out.push_back(std::move(pm));
                    }
                }
            }
            break;
        }
        case MixerKind::ReleaseNullSwap: {
            const SmsData& sms = inst.sms;
            const int h = sms.horizon >= 0 ? sms.horizon : sms.default_horizon(true);
            for (int i = 1; i <= sms.n(); ++i) {
                const auto& window = enc.windows[i - 1];
                const int b_i = sms.buffer_time(i - 1, h);
                for (int t : window) {
                    if (t >= h) continue;  // the buffer slot itself
                    PartialMixer pm;
                    pm.label.key = {i, t, -1, -1, -1};
                    pm.label.name = "rns(" + std::to_string(i) + "," + std::to_string(t) + ")";
                    HermitianTerm term = HermitianTerm::two_level(
                        {window_qubit(enc, i - 1, t), window_qubit(enc, i - 1, b_i)}, 0b01, 0b10,
                        1.0);
                    for (int j = 1; j <= sms.n(); ++j) {
                        if (j == i) continue;
                        const int rj = sms.r.empty() ? 0 : sms.r[j - 1];
                        const int lo = std::max(t - sms.p[j - 1] + 1, rj);
                        const int hi = t + sms.p[i - 1] - 1;
                        for (int tp = lo; tp <= hi; ++tp) {
                            const auto& wj = enc.windows[j - 1];
                            if (std::find(wj.begin(), wj.end(), tp) == wj.end()) continue;
                            if (tp >= h) continue;
                            term.control_cnf.push_back({{window_qubit(enc, j - 1, tp), 0}});
                        }
                    }
                    pm.generator.push_back(std::move(term));
                    out.push_back(std::move(pm));
                }
            }
            break;
        }
    }
    for (auto& pm : out) pm.kind = opts.kind;
    std::sort(out.begin(), out.end(),
              [](const PartialMixer& a, const PartialMixer& b) { return a.label < b.label; });
    return out;
}

std::vector<std::vector<std::pair<int, int>>> edge_coloring_complete_graph(int n) {
    if (n < 2) return {};
    std::vector<std::vector<std::pair<int, int>>> classes;
    const bool even = n % 2 == 0;
    const int ring = even ? n - 1 : n;  // polygon vertices 0..ring-1, center = n-1 when even
    for (int c = 0; c < ring; ++c) {
        std::vector<std::pair<int, int>> part;
        for (int a = 0; a < ring; ++a) {
            for (int b = a + 1; b < ring; ++b) {
                if ((a + b) % ring == (2 * c) % ring) part.push_back({a + 1, b + 1});
            }
        }
        if (even) part.push_back({std::min(c + 1, n), std::max(c + 1, n)});
        std::sort(part.begin(), part.end());
        if (!part.empty()) classes.push_back(std::move(part));
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return classes;
}

std::vector<PartialMixer> atomize(const std::vector<PartialMixer>& partials) {
    std::vector<PartialMixer> atoms;
    for (const auto& pm : partials) {
        if (pm.generator.size() <= 1 || pm.label.key[1] >= 0) {
            atoms.push_back(pm);
            continue;
        }
        // Single-qudit/Hamming-ring mixers split into one atom per coupling;
        // key[4] carries the coupling's first qubit for a stable order.
        for (const auto& term : pm.generator) {
            PartialMixer atom;
            atom.generator = {term};
            atom.label = pm.label;
            atom.label.key[4] = term.qubits[0];
            atom.label.name = pm.label.name + "#" + std::to_string(term.qubits[0]);
            atoms.push_back(std::move(atom));
        }
    }
    return atoms;
}

namespace {

// Ring-pair metadata for parity classification of an atomized single-qudit
// or Hamming-ring coupling: returns (pair index 1-based, ring size) or
// nullopt when the atom is not a stride-1 ring coupling.
struct RingPos {
    int index_1b;
    int ring_size;
};

std::optional<RingPos> ring_position(const HermitianTerm& t, const Encoding& enc) {
    if (t.body != HermitianTerm::Body::TwoLevel || t.qubits.size() != 2) return std::nullopt;
    int base = 0, d = 0;
    if (enc.scheme == Encoding::Scheme::OneHot) {
        d = enc.d;
        const int reg = t.qubits[0] / d;
        base = reg * d;
    } else {  // Hamming ring over the whole register
        d = enc.n_qubits();
        base = 0;
    }
    const int a = t.qubits[0] - base, b = t.qubits[1] - base;
    if (a < 0 || a >= d || b < 0 || b >= d) return std::nullopt;
    if ((a + 1) % d == b) return RingPos{a + 1, d};
    if ((b + 1) % d == a) return RingPos{b + 1, d};
    return std::nullopt;
}

std::optional<int> color_class_of_pair(const std::vector<std::vector<std::pair<int, int>>>& col,
                                       int u, int v) {
    for (std::size_t c = 0; c < col.size(); ++c) {
        for (const auto& [a, b] : col[c]) {
            if (a == u && b == v) return static_cast<int>(c);
        }
    }
    return std::nullopt;
}

}  // namespace

OrderedPartition make_partition(const std::vector<PartialMixer>& partials,
                                PartitionStrategy strategy, const ProblemInstance& inst,
                                const Encoding& enc) {
    OrderedPartition part;
    part.strategy = strategy;
    std::vector<PartialMixer> atoms = atomize(partials);
    std::sort(atoms.begin(), atoms.end(),
              [](const PartialMixer& a, const PartialMixer& b) { return a.label < b.label; });

    auto greedy_insert = [&](std::vector<std::vector<PartialMixer>>& parts,
                             const PartialMixer& atom) {
        for (auto& p : parts) {
            bool ok = true;
            for (const auto& other : p) {
                if (!structurally_commute(atom, other)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                p.push_back(atom);
                return;
            }
        }
        parts.push_back({atom});
    };

    switch (strategy) {
        case PartitionStrategy::Singleton: {
            for (const auto& a : atoms) part.parts.push_back({a});
            break;
        }
        case PartitionStrategy::GreedyCommuting: {
            for (const auto& a : atoms) greedy_insert(part.parts, a);
            break;
        }
        case PartitionStrategy::Parity: {
            std::array<std::vector<PartialMixer>, 3> classes;
            std::vector<PartialMixer> rest;
            for (const auto& a : atoms) {
                // Binary-parity partials carry their class in the label.
                if (a.kind == MixerKind::BinaryParity) {
                    classes[a.label.key[1]].push_back(a);
                    continue;
                }
                if (a.generator.size() == 1) {
                    if (auto rp = ring_position(a.generator[0], enc)) {
                        classes[parity_class(rp->index_1b, rp->ring_size, true)].push_back(a);
                        continue;
                    }
                    if (a.generator[0].body == HermitianTerm::Body::PauliX) {
                        classes[0].push_back(a);  // slack/bit-flip atoms commute with all
                        continue;
                    }
                    // Longer-stride couplings extend the scheme greedily.
                    if (a.generator[0].body == HermitianTerm::Body::TwoLevel &&
                        a.generator[0].qubits.size() == 2) {
                        rest.push_back(a);
                        continue;
                    }
                }
                throw std::invalid_argument(
                    "parity partition does not fit the partial-mixer labels");
            }
            for (auto& c : classes) {
                if (!c.empty()) part.parts.push_back(std::move(c));
            }
            for (const auto& a : rest) greedy_insert(part.parts, a);
            break;
        }
        case PartitionStrategy::Color:
        case PartitionStrategy::ColorParity:
        case PartitionStrategy::TimeColor: {
            int n_items = 0;
            if (inst.kind == ProblemKind::Tsp)
                n_items = inst.tsp.n;
            else
                n_items = inst.sms.n();
            const auto coloring = edge_coloring_complete_graph(n_items);
            // Keyed by (color, secondary); secondary is the position parity
            // class, the time slot, or 0 for plain color partitions.
            std::map<std::pair<int, int>, std::vector<PartialMixer>> keyed;
            std::vector<PartialMixer> rest;
            const int n_positions =
                static_cast<int>(ordering_positions(n_items, false, false).size());
            for (const auto& a : atoms) {
                const int i = a.label.key[0], u = a.label.key[1], v = a.label.key[2];
                const auto cls = color_class_of_pair(coloring, u, v);
                if (!cls) {
                    rest.push_back(a);
                    continue;
                }
                int secondary = 0;
                if (strategy == PartitionStrategy::ColorParity)
                    secondary = parity_class(i, std::max(n_positions, i), false);
                else if (strategy == PartitionStrategy::TimeColor)
                    secondary = i;  // time slot for time-swap labels
                if (strategy == PartitionStrategy::TimeColor)
                    keyed[{secondary, *cls}].push_back(a);
                else
                    keyed[{*cls, secondary}].push_back(a);
            }
            for (auto& [key, bucket] : keyed) part.parts.push_back(std::move(bucket));
            // Unlabeled atoms (e.g. slack bit flips) ride along wherever they fit.
            for (const auto& a : rest) greedy_insert(part.parts, a);
            break;
        }
    }
    if (!part.commuting_within_parts())
        throw std::invalid_argument("partition strategy does not fit the partial-mixer labels");
    return part;
}

MixerSpec build_mixer(const ProblemInstance& inst, const Encoding& enc,
                      const MixerOptions& opts) {
    MixerSpec spec;
    spec.options = opts;
    spec.n_main_qubits = enc.n_qubits();
    spec.encoding = enc;
    spec.partials = build_partial_mixers(inst, enc, opts);
    if (!opts.simultaneous) spec.partition = make_partition(spec.partials, opts.strategy, inst, enc);
    if (opts.repeats < 1) throw std::invalid_argument("mixer repeats must be >= 1");
    return spec;
}

// ---------------------------------------------------------- realization ---

namespace {

constexpr int direct_control_cap = 3;  // beyond this, compile through an ancilla

struct AncillaBudget {
    int next = 0;
    int used = 0;
    int claim(int count) {
        const int base = next;
        used = std::max(used, next + count);
        return base;
    }
};

GatePrimitive mcx(const std::vector<std::pair<int, int>>& controls, int target) {
    GatePrimitive g;
    g.kind = GateKind::PauliX;
    g.targets = {target};
    g.controls = controls;
    g.section = GatePrimitive::Section::Mixer;
    return g;
}

// One rotation gate for a single-term generator, controls still unattached.
GatePrimitive rotation_for_term(const HermitianTerm& t) {
    GatePrimitive g;
    if (t.body == HermitianTerm::Body::PauliX) {
        g.kind = GateKind::RX;
        g.targets = t.qubits;
        g.angle = AngleRole::beta(1, t.coeff);
    } else if (t.qubits.size() == 2 && t.label_a == 0b01 && t.label_b == 0b10) {
        g.kind = GateKind::XY;
        g.targets = t.qubits;
        g.angle = AngleRole::beta(1, 0.5 * t.coeff);  // XY applies exp(-i 2theta |01><10|+h.c.)
    } else {
        g.kind = GateKind::TwoLevel;
        g.targets = t.qubits;
        g.label_a = t.label_a;
        g.label_b = t.label_b;
        g.angle = AngleRole::beta(1, t.coeff);
    }
    g.section = GatePrimitive::Section::Mixer;
    g.partial_mixer = true;
    return g;
}

void emit_atom(std::vector<GatePrimitive>& gates, const PartialMixer& atom, int n_main,
               AncillaBudget& anc) {
    for (const HermitianTerm& t : atom.generator) {
        GatePrimitive rot = rotation_for_term(t);
        const bool conjunctive = std::all_of(t.control_cnf.begin(), t.control_cnf.end(),
                                             [](const auto& c) { return c.size() == 1; });
        if (t.control_cnf.empty()) {
            gates.push_back(std::move(rot));
        } else if (conjunctive) {
            std::vector<std::pair<int, int>> controls;
            for (const auto& clause : t.control_cnf) controls.push_back(clause[0]);
            std::sort(controls.begin(), controls.end());
            controls.erase(std::unique(controls.begin(), controls.end()), controls.end());
            if (static_cast<int>(controls.size()) <= direct_control_cap) {
                rot.controls = controls;
                gates.push_back(std::move(rot));
            } else {
                const int a = n_main + anc.claim(1);
                gates.push_back(mcx(controls, a));
                rot.controls = {{a, 1}};
                gates.push_back(std::move(rot));
                gates.push_back(mcx(controls, a));
            }
        } else {
            // AND of ORs: one ancilla per clause computes the clause's NOR,
            // the rotation fires when every NOR ancilla is clear.
            const int k = static_cast<int>(t.control_cnf.size());
            const int base = n_main + anc.claim(k);
            std::vector<GatePrimitive> computes;
            std::vector<std::pair<int, int>> rot_controls;
            for (int c = 0; c < k; ++c) {
                std::vector<std::pair<int, int>> nor_controls;
                for (const auto& [q, v] : t.control_cnf[c]) nor_controls.push_back({q, 1 - v});
                std::sort(nor_controls.begin(), nor_controls.end());
                computes.push_back(mcx(nor_controls, base + c));
                rot_controls.push_back({base + c, 0});
            }
            for (const auto& g : computes) gates.push_back(g);
            rot.controls = rot_controls;
            gates.push_back(std::move(rot));
            for (const auto& g : computes) gates.push_back(g);
        }
    }
}

}  // namespace

namespace {

// ADD(+/-1) on an l-bit register as l multiply-controlled X gates.
void emit_add_one(std::vector<GatePrimitive>& gates, int base, int l, bool increment) {
    for (int k = l - 1; k >= 0; --k) {
        std::vector<std::pair<int, int>> controls;
        for (int low = 0; low < k; ++low) controls.push_back({base + low, increment ? 1 : 0});
        gates.push_back(mcx(controls, base + k));
    }
}

void emit_lsb_rotation(std::vector<GatePrimitive>& gates, int base) {
    GatePrimitive g;
    g.kind = GateKind::RX;
    g.targets = {base};
    g.angle = AngleRole::beta(1, 1.0);
    g.section = GatePrimitive::Section::Mixer;
    g.partial_mixer = true;
    gates.push_back(std::move(g));
}

// Odd half: ADD(+1), X(beta) on the least significant bit, ADD(-1).
// Even half: X(beta) alone.
void emit_binary_parity_half(std::vector<GatePrimitive>& gates, const Encoding& enc, int reg,
                             bool odd) {
    const int l = enc.bits_per_register(0);
    const int base = enc.register_base(reg);
    if (odd) {
        emit_add_one(gates, base, l, true);
        emit_lsb_rotation(gates, base);
        emit_add_one(gates, base, l, false);
    } else {
        emit_lsb_rotation(gates, base);
    }
}

}  // namespace

std::vector<GatePrimitive> binary_parity_mixer(const Encoding& enc, int reg) {
    if (enc.scheme != Encoding::Scheme::Binary || (enc.d & (enc.d - 1)) != 0)
        throw std::invalid_argument("binary parity mixer requires binary encoding, d = 2^l");
    std::vector<GatePrimitive> gates;
    emit_binary_parity_half(gates, enc, reg, true);
    emit_binary_parity_half(gates, enc, reg, false);
    return gates;
}

MixerRealization realize_partitioned(const MixerSpec& spec) {
    MixerRealization real;
    real.n_qubits = spec.n_main_qubits;
    AncillaBudget anc;

    for (int rep = 0; rep < spec.options.repeats; ++rep) {
        for (const auto& part : spec.partition.parts) {
            for (const auto& atom : part) {
                if (atom.kind == MixerKind::BinaryParity) {
                    emit_binary_parity_half(real.gates, spec.encoding, atom.label.key[0],
                                            atom.label.key[1] == 0);
                } else {
                    emit_atom(real.gates, atom, real.n_qubits, anc);
                }
            }
        }
    }
    real.n_ancilla = anc.used;
    real.partial_count = spec.partition.total();
    real.parts = static_cast<int>(spec.partition.parts.size()) * spec.options.repeats;
    return real;
}

DenseMatrix realize_simultaneous(const MixerSpec& spec, double beta) {
    std::vector<HermitianTerm> terms;
    for (const auto& pm : spec.partials)
        terms.insert(terms.end(), pm.generator.begin(), pm.generator.end());
    const DenseMatrix h = terms_to_dense(terms, spec.n_main_qubits);
    return expm_hermitian(h, beta);
}

MixerRealization realize_simultaneous_gate(const MixerSpec& spec) {
    MixerRealization real;
    real.n_qubits = spec.n_main_qubits;
    auto terms = std::make_shared<std::vector<HermitianTerm>>();
    for (const auto& pm : spec.partials)
        terms->insert(terms->end(), pm.generator.begin(), pm.generator.end());
    GatePrimitive g;
    g.kind = GateKind::Expm;
    g.targets.resize(spec.n_main_qubits);
    std::iota(g.targets.begin(), g.targets.end(), 0);
    g.ham = terms;
    g.angle = AngleRole::beta(1, 1.0);
    g.section = GatePrimitive::Section::Mixer;
    g.partial_mixer = true;
    real.gates.push_back(std::move(g));
    real.partial_count = static_cast<int>(spec.partials.size());
    real.parts = 1;
    return real;
}

MixerOptions default_mixer_options(const ProblemInstance& inst, const Encoding& enc) {
    MixerOptions o;
    o.strategy = PartitionStrategy::GreedyCommuting;
    switch (inst.kind) {
        case ProblemKind::MaxCut:
        case ProblemKind::DirectedMaxCut:
        case ProblemKind::MaxLSat:
        case ProblemKind::MinLSat:
        case ProblemKind::NaeLSat:
        case ProblemKind::SetSplitting:
        case ProblemKind::E3Lin2:
            o.kind = MixerKind::BitFlipX;
            break;
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover:
        case ProblemKind::MaxSetPacking:
        case ProblemKind::MinSetCover:
            o.kind = MixerKind::ControlledX;
            break;
        case ProblemKind::MaxColorableSubgraph:
            o.kind = enc.scheme == Encoding::Scheme::Binary ? MixerKind::BinaryParity
                                                            : MixerKind::Ring;
            o.strategy = PartitionStrategy::Parity;
            break;
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection:
        case ProblemKind::MaxVertexKCover:
            o.kind = MixerKind::HammingRing;
            o.strategy = PartitionStrategy::Parity;
            break;
        case ProblemKind::MaxColorableInducedSubgraph:
            o.kind = MixerKind::NullSwap;
            break;
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
            o.kind = MixerKind::ControlledSwap;
            break;
        case ProblemKind::Tsp:
        case ProblemKind::SmsSquaredTardiness:
            o.kind = MixerKind::OrderingSwap;
            o.strategy = PartitionStrategy::ColorParity;
            break;
        case ProblemKind::SmsTotalTardiness:
            o.kind = MixerKind::TimeSwap;
            o.strategy = PartitionStrategy::TimeColor;
            break;
        case ProblemKind::SmsReleaseDates:
            o.kind = MixerKind::ReleaseNullSwap;
            break;
    }
    return o;
}

}  // namespace qaoakit
