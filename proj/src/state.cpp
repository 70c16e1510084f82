#include "qaoakit/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qaoakit {

namespace {

basis_t insert_bits(basis_t packed, const std::vector<int>& qubits, basis_t base) {
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        if ((packed >> k) & 1) base |= basis_t{1} << qubits[k];
    }
    return base;
}

basis_t extract_bits(basis_t index, const std::vector<int>& qubits) {
    basis_t sub = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        if ((index >> qubits[k]) & 1) sub |= basis_t{1} << k;
    }
    return sub;
}

bool controls_match(basis_t index, const std::vector<std::pair<int, int>>& controls) {
    for (const auto& [q, v] : controls) {
        if (static_cast<int>((index >> q) & 1) != v) return false;
    }
    return true;
}

struct ControlMask {
    basis_t mask = 0, value = 0;
    explicit ControlMask(const std::vector<std::pair<int, int>>& controls) {
        for (const auto& [q, v] : controls) {
            mask |= basis_t{1} << q;
            if (v) value |= basis_t{1} << q;
        }
    }
    bool matches(basis_t index) const { return (index & mask) == value; }
};

void check_gate(const GatePrimitive& gate, int n_qubits) {
    for (int q : gate.targets) {
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("gate target out of range");
    }
    for (const auto& [q, v] : gate.controls) {
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("gate control out of range");
        if (v != 0 && v != 1) throw std::invalid_argument("control value must be 0 or 1");
        for (int t : gate.targets) {
            if (t == q) throw std::invalid_argument("targets and controls must be disjoint");
        }
    }
}

}  // namespace

AmplitudeVector AmplitudeVector::basis_state(int n, basis_t index) {
    AmplitudeVector s(n);
    if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
    s.amps[index] = 1.0;
    return s;
}

double AmplitudeVector::norm_sq() const {
    double acc = 0.0;
    for (const cplx& a : amps) acc += std::norm(a);
    return acc;
}

double AmplitudeVector::fidelity(const AmplitudeVector& other) const {
    cplx ov = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) ov += std::conj(amps[i]) * other.amps[i];
    return std::norm(ov);
}

double AngleRole::resolve(const QaoaSchedule& sched) const {
    switch (kind) {
        case Kind::Fixed:
            return coeff;
        case Kind::Gamma:
            if (level < 1 || level > static_cast<int>(sched.gammas.size()))
                throw std::invalid_argument("unresolved gamma(" + std::to_string(level) + ")");
            return coeff * sched.gammas[level - 1];
        case Kind::Beta:
            if (level < 1 || level > static_cast<int>(sched.betas.size()))
                throw std::invalid_argument("unresolved beta(" + std::to_string(level) + ")");
            return coeff * sched.betas[level - 1];
    }
    return coeff;
}

std::string AngleRole::text() const {
    switch (kind) {
        case Kind::Gamma:
            return "gamma(" + std::to_string(level) + ")";
        case Kind::Beta:
            return "beta(" + std::to_string(level) + ")";
        case Kind::Fixed:
            return "fixed";
    }
    return "fixed";
}

HermitianTerm HermitianTerm::two_level(std::vector<int> qs, basis_t a, basis_t b, double coeff) {
    HermitianTerm t;
    t.body = Body::TwoLevel;
    t.coeff = coeff;
    t.qubits = std::move(qs);
    t.label_a = a;
    t.label_b = b;
    return t;
}

HermitianTerm HermitianTerm::pauli_x(int q, double coeff) {
    HermitianTerm t;
    t.body = Body::PauliX;
    t.coeff = coeff;
    t.qubits = {q};
    return t;
}

bool HermitianTerm::cnf_holds(basis_t index) const {
    for (const auto& clause : control_cnf) {
        bool sat = false;
        for (const auto& [q, v] : clause) {
            if (static_cast<int>((index >> q) & 1) == v) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::vector<int> HermitianTerm::support() const { return qubits; }

std::vector<int> HermitianTerm::control_support() const {
    std::vector<int> qs;
    for (const auto& clause : control_cnf) {
        for (const auto& [q, v] : clause) qs.push_back(q);
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::PauliX: return "X";
        case GateKind::Hadamard: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::MultiZ: return "MULTIZ";
        case GateKind::XY: return "XY";
        case GateKind::TwoLevel: return "TWOLEVEL";
        case GateKind::SwapExp: return "SWAPEXP";
        case GateKind::CPhase: return "CPHASE";
        case GateKind::DiagPhase: return "DIAGPHASE";
        case GateKind::Expm: return "EXPM";
        case GateKind::Dense: return "DENSE";
    }
    return "?";
}

namespace {

// Rotates the pair (x, y) by e^{-i theta X} in the 2-dim subspace.
inline void rot_pair(cplx& x, cplx& y, double c, double s) {
    const cplx nx = c * x - cplx{0.0, 1.0} * s * y;
    const cplx ny = c * y - cplx{0.0, 1.0} * s * x;
    x = nx;
    y = ny;
}

void apply_two_level(AmplitudeVector& state, const std::vector<int>& qubits, basis_t la,
                     basis_t lb, const std::vector<std::pair<int, int>>& controls, double theta) {
    if (la == lb) throw std::invalid_argument("two-level labels must differ");
    const double c = std::cos(theta), s = std::sin(theta);
    const std::size_t dim = state.dim();
    // Iterate over indices whose restriction to `qubits` equals label_a and
    // pair each with the label_b partner.
    basis_t mask = 0;
    for (int q : qubits) mask |= basis_t{1} << q;
    const basis_t set_a = insert_bits(la, qubits, 0);
    const basis_t set_b = insert_bits(lb, qubits, 0);
    const ControlMask ctrl(controls);
    for (basis_t x = 0; x < dim; ++x) {
        if ((x & mask) != set_a) continue;
        if (!ctrl.matches(x)) continue;
        const basis_t y = (x & ~mask) | set_b;
        rot_pair(state.amps[x], state.amps[y], c, s);
    }
}

}  // namespace

void apply_gate(AmplitudeVector& state, const GatePrimitive& gate, const QaoaSchedule& angles) {
    check_gate(gate, state.n_qubits);
    const double theta = gate.angle.resolve(angles);
    const std::size_t dim = state.dim();
    auto& amps = state.amps;

    switch (gate.kind) {
        case GateKind::PauliX: {
            if (gate.targets.size() != 1) throw std::invalid_argument("X takes one target");
            const basis_t bit = basis_t{1} << gate.targets[0];
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if ((x & bit) || !ctrl.matches(x)) continue;
                std::swap(amps[x], amps[x | bit]);
            }
            break;
        }
        case GateKind::Hadamard: {
            if (gate.targets.size() != 1) throw std::invalid_argument("H takes one target");
            const basis_t bit = basis_t{1} << gate.targets[0];
            const double r = 1.0 / std::sqrt(2.0);
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if ((x & bit) || !ctrl.matches(x)) continue;
                const cplx a0 = amps[x], a1 = amps[x | bit];
                amps[x] = r * (a0 + a1);
                amps[x | bit] = r * (a0 - a1);
            }
            break;
        }
        case GateKind::RX: {
            if (gate.targets.size() != 1) throw std::invalid_argument("RX takes one target");
            const basis_t bit = basis_t{1} << gate.targets[0];
            const double c = std::cos(theta), s = std::sin(theta);
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if ((x & bit) || !ctrl.matches(x)) continue;
                rot_pair(amps[x], amps[x | bit], c, s);
            }
            break;
        }
        case GateKind::RZ:
        case GateKind::MultiZ: {
            if (gate.targets.empty()) throw std::invalid_argument("Z rotation needs targets");
            basis_t mask = 0;
            for (int q : gate.targets) mask |= basis_t{1} << q;
            const cplx ph_even = std::polar(1.0, -theta);
            const cplx ph_odd = std::polar(1.0, theta);
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if (!ctrl.matches(x)) continue;
                amps[x] *= (std::popcount(x & mask) & 1) ? ph_odd : ph_even;
            }
            break;
        }
        case GateKind::XY: {
            if (gate.targets.size() != 2) throw std::invalid_argument("XY takes two targets");
            // e^{-i theta (XX+YY)}: rotation by 2 theta on span{|01>,|10>}.
            apply_two_level(state, gate.targets, 0b01, 0b10, gate.controls, 2.0 * theta);
            break;
        }
        case GateKind::TwoLevel: {
            apply_two_level(state, gate.targets, gate.label_a, gate.label_b, gate.controls,
                            theta);
            break;
        }
        case GateKind::SwapExp: {
            if (gate.targets.size() != 2) throw std::invalid_argument("SwapExp takes two targets");
            const basis_t b0 = basis_t{1} << gate.targets[0];
            const basis_t b1 = basis_t{1} << gate.targets[1];
            const double c = std::cos(theta), s = std::sin(theta);
            const cplx eq_phase = cplx{c, s};  // SWAP eigenvalue +1 sector
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if (!ctrl.matches(x)) continue;
                const bool v0 = x & b0, v1 = x & b1;
                if (v0 == v1) {
                    amps[x] *= eq_phase;
                } else if (!v0) {  // handle each {01,10} pair once
                    const basis_t y = (x | b0) & ~b1;
                    const cplx ax = amps[x], ay = amps[y];
                    amps[x] = c * ax + cplx{0.0, s} * ay;
                    amps[y] = c * ay + cplx{0.0, s} * ax;
                }
            }
            break;
        }
        case GateKind::CPhase: {
            const cplx ph = std::polar(1.0, -theta);
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if (ctrl.matches(x)) amps[x] *= ph;
            }
            break;
        }
        case GateKind::DiagPhase: {
            if (!gate.diag) throw std::invalid_argument("DiagPhase without function");
            const ControlMask ctrl(gate.controls);
            for (basis_t x = 0; x < dim; ++x) {
                if (!ctrl.matches(x)) continue;
                const basis_t sub = extract_bits(x, gate.targets);
                amps[x] *= std::polar(1.0, -theta * (*gate.diag)(sub));
            }
            break;
        }
        case GateKind::Expm: {
            if (!gate.ham) throw std::invalid_argument("Expm without Hamiltonian");
            if (!gate.controls.empty())
                throw std::invalid_argument("Expm gates do not take controls");
            apply_expm_terms(state, *gate.ham, theta);
            break;
        }
        case GateKind::Dense: {
            if (!gate.dense) throw std::invalid_argument("Dense gate without matrix");
            const std::size_t k = gate.targets.size();
            const std::size_t sub_dim = std::size_t{1} << k;
            if (gate.dense->dim != sub_dim)
                throw std::invalid_argument("dense payload dimension mismatch");
            if (!is_unitary(*gate.dense, 1e-12))
                throw std::invalid_argument("dense payload is not unitary");
            basis_t mask = 0;
            for (int q : gate.targets) mask |= basis_t{1} << q;
            std::vector<cplx> in(sub_dim), out(sub_dim);
            for (basis_t base = 0; base < dim; ++base) {
                if ((base & mask) != 0) continue;
                if (!controls_match(base, gate.controls)) continue;
                for (basis_t s = 0; s < sub_dim; ++s)
                    in[s] = amps[insert_bits(s, gate.targets, base)];
                for (basis_t r = 0; r < sub_dim; ++r) {
                    cplx acc = 0.0;
                    for (basis_t s2 = 0; s2 < sub_dim; ++s2) acc += (*gate.dense)(r, s2) * in[s2];
                    out[r] = acc;
                }
                for (basis_t r = 0; r < sub_dim; ++r)
                    amps[insert_bits(r, gate.targets, base)] = out[r];
            }
            break;
        }
    }
}

void apply_diagonal_phase(AmplitudeVector& state, const std::function<double(basis_t)>& g,
                          double gamma) {
    for (basis_t x = 0; x < state.dim(); ++x)
        state.amps[x] *= std::polar(1.0, -gamma * g(x));
}

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matmul dimension mismatch");
    const std::size_t n = x.dim;
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx v = x(i, k);
            if (v == cplx{0.0, 0.0}) continue;
            const cplx* yr = &y.a[k * n];
            cplx* outr = &out.a[i * n];
            for (std::size_t j = 0; j < n; ++j) outr[j] += v * yr[j];
        }
    }
    return out;
}

std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& v) {
    if (m.dim != v.size()) throw std::invalid_argument("matvec dimension mismatch");
    std::vector<cplx> out(m.dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m.dim; ++i) {
        cplx acc = 0.0;
        const cplx* row = &m.a[i * m.dim];
        for (std::size_t j = 0; j < m.dim; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

double frobenius_diff(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) acc += std::norm(x.a[i] - y.a[i]);
    return std::sqrt(acc);
}

bool is_unitary(const DenseMatrix& m, double tol) {
    const std::size_t n = m.dim;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(m(k, i)) * m(k, j);
            const cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(acc - want) > tol) return false;
        }
    }
    return true;
}

bool is_hermitian(const DenseMatrix& m, double tol) {
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = i; j < m.dim; ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
        }
    }
    return true;
}

DenseMatrix expm_hermitian(const DenseMatrix& h, double theta) {
    if (h.dim > dense_dim_cap) throw std::invalid_argument("expm_hermitian: dimension too large");
    if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("expm_hermitian: input not Hermitian");

    // Bound ||theta H|| by the max row sum, scale below 1/2, Taylor, square back.
    double row_max = 0.0;
    for (std::size_t i = 0; i < h.dim; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < h.dim; ++j) r += std::abs(h(i, j));
        row_max = std::max(row_max, r);
    }
    double scale = std::abs(theta) * row_max;
    int squarings = 0;
    while (scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const double t = theta / static_cast<double>(std::size_t{1} << squarings);

    DenseMatrix result = DenseMatrix::identity(h.dim);
    DenseMatrix term = DenseMatrix::identity(h.dim);
    const cplx factor = cplx{0.0, -t};
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, h);
        const cplx c = factor / static_cast<double>(k);
        for (std::size_t i = 0; i < term.a.size(); ++i) term.a[i] *= c;
        for (std::size_t i = 0; i < term.a.size(); ++i) result.a[i] += term.a[i];
        // factor/k applied in place keeps `term` equal to (-i t H)^k / k!
        double mx = 0.0;
        for (const cplx& v : term.a) mx = std::max(mx, std::abs(v));
        if (mx < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

void apply_terms(const std::vector<HermitianTerm>& terms, const std::vector<cplx>& in,
                 std::vector<cplx>& out, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (in.size() != dim) throw std::invalid_argument("apply_terms dimension mismatch");
    out.assign(dim, cplx{0.0, 0.0});
    for (const HermitianTerm& t : terms) {
        if (t.body == HermitianTerm::Body::PauliX) {
            const basis_t bit = basis_t{1} << t.qubits[0];
            for (basis_t x = 0; x < dim; ++x) {
                if (in[x] == cplx{0.0, 0.0}) continue;
                if (!t.cnf_holds(x)) continue;
                out[x ^ bit] += t.coeff * in[x];
            }
        } else {
            basis_t mask = 0;
            for (int q : t.qubits) mask |= basis_t{1} << q;
            basis_t set_a = 0, set_b = 0;
            for (std::size_t k = 0; k < t.qubits.size(); ++k) {
                if ((t.label_a >> k) & 1) set_a |= basis_t{1} << t.qubits[k];
                if ((t.label_b >> k) & 1) set_b |= basis_t{1} << t.qubits[k];
            }
            for (basis_t x = 0; x < dim; ++x) {
                if (in[x] == cplx{0.0, 0.0}) continue;
                const basis_t r = x & mask;
                if (r != set_a && r != set_b) continue;
                if (!t.cnf_holds(x)) continue;
                const basis_t y = (x & ~mask) | (r == set_a ? set_b : set_a);
                out[y] += t.coeff * in[x];
            }
        }
    }
}

void apply_expm_terms(AmplitudeVector& state, const std::vector<HermitianTerm>& terms,
                      double theta) {
    double norm_bound = 0.0;
    for (const HermitianTerm& t : terms) norm_bound += std::abs(t.coeff);
    double scale = std::abs(theta) * norm_bound;
    int chunks = 1;
    while (scale / chunks > 0.5) chunks *= 2;
    const double t = theta / chunks;

    std::vector<cplx> term = state.amps, scratch;
    for (int c = 0; c < chunks; ++c) {
        std::vector<cplx> acc = state.amps;
        term = state.amps;
        for (int k = 1; k <= 24; ++k) {
            apply_terms(terms, term, scratch, state.n_qubits);
            const cplx f = cplx{0.0, -t} / static_cast<double>(k);
            double mx = 0.0;
            for (std::size_t i = 0; i < scratch.size(); ++i) {
                scratch[i] *= f;
                acc[i] += scratch[i];
                mx = std::max(mx, std::abs(scratch[i]));
            }
            term.swap(scratch);
            if (mx < 1e-18) break;
        }
        state.amps.swap(acc);
    }
}

DenseMatrix terms_to_dense(const std::vector<HermitianTerm>& terms, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (dim > dense_dim_cap) throw std::invalid_argument("terms_to_dense: dimension too large");
    DenseMatrix h(dim);
    std::vector<cplx> col(dim), out;
    for (basis_t j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), cplx{0.0, 0.0});
        col[j] = 1.0;
        apply_terms(terms, col, out, n_qubits);
        for (basis_t i = 0; i < dim; ++i) h(i, j) = out[i];
    }
    return h;
}

std::shared_ptr<const DiagFn> make_diag_fn(std::function<double(basis_t)> fn,
                                           int n_target_qubits, bool cache) {
    auto d = std::make_shared<DiagFn>();
    d->fn = std::move(fn);
    if (cache && n_target_qubits <= diag_cache_max_qubits) {
        const std::size_t n = std::size_t{1} << n_target_qubits;
        d->table.resize(n);
        for (std::size_t x = 0; x < n; ++x) d->table[x] = d->fn(x);
    }
    return d;
}

}  // namespace qaoakit
