#include "qaoakit/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qaoakit {

namespace {

int ceil_log2(int d) {
    int l = 0;
    while ((1 << l) < d) ++l;
    return l;
}

}  // namespace

std::string Configuration::text() const {
    std::string s;
    switch (kind) {
        case Kind::Dits: s = "x("; break;
        case Kind::Ordering: s = "ord("; break;
        case Kind::Schedule: s = "sched("; break;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(values[i]);
    }
    s += ")";
    if (!slack.empty()) {
        s += " y(";
        for (std::size_t i = 0; i < slack.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(slack[i]);
        }
        s += ")";
    }
    return s;
}

Encoding Encoding::one_hot(int d, int n_registers) {
    if (d < 2 || n_registers < 1) throw std::invalid_argument("one_hot: bad dimensions");
    Encoding e;
    e.scheme = Scheme::OneHot;
    e.d = d;
    e.n_registers = n_registers;
    return e;
}

Encoding Encoding::binary(int d, int n_registers) {
    if (d < 2 || n_registers < 1) throw std::invalid_argument("binary: bad dimensions");
    Encoding e;
    e.scheme = Scheme::Binary;
    e.d = d;
    e.n_registers = n_registers;
    return e;
}

Encoding Encoding::direct_one_hot(int n_items) {
    if (n_items < 1) throw std::invalid_argument("direct_one_hot: bad item count");
    Encoding e;
    e.scheme = Scheme::DirectOneHot;
    e.d = n_items;
    e.n_registers = n_items;  // one register per slot
    return e;
}

Encoding Encoding::absolute_one_hot(std::vector<std::vector<int>> windows) {
    if (windows.empty()) throw std::invalid_argument("absolute_one_hot: empty windows");
    Encoding e;
    e.scheme = Scheme::AbsoluteOneHot;
    e.windows = std::move(windows);
    e.n_registers = static_cast<int>(e.windows.size());
    return e;
}

int Encoding::bits_per_register(int reg) const {
    switch (scheme) {
        case Scheme::OneHot: return d;
        case Scheme::Binary: return ceil_log2(d);
        case Scheme::DirectOneHot: return d;
        case Scheme::AbsoluteOneHot: return static_cast<int>(windows[reg].size());
    }
    return 0;
}

int Encoding::register_base(int reg) const {
    if (scheme == Scheme::AbsoluteOneHot) {
        int base = 0;
        for (int i = 0; i < reg; ++i) base += static_cast<int>(windows[i].size());
        return base;
    }
    return reg * bits_per_register(0);
}

int Encoding::main_qubits() const {
    if (scheme == Scheme::AbsoluteOneHot) {
        int n = 0;
        for (const auto& w : windows) n += static_cast<int>(w.size());
        return n;
    }
    return n_registers * bits_per_register(0);
}

int Encoding::slack_base(int i) const {
    int base = main_qubits();
    for (int k = 0; k < i; ++k) base += slack_bits[k];
    return base;
}

int Encoding::n_qubits() const {
    int n = main_qubits();
    for (int b : slack_bits) n += b;
    return n;
}

basis_t Encoding::encode(const Configuration& cfg) const {
    basis_t index = 0;
    switch (scheme) {
        case Scheme::OneHot: {
            if (static_cast<int>(cfg.values.size()) != n_registers)
                throw std::invalid_argument("encode: register count mismatch");
            for (int r = 0; r < n_registers; ++r) {
                const int v = cfg.values[r];
                if (v < 0 || v >= d) throw std::invalid_argument("encode: value out of alphabet");
                index |= basis_t{1} << (register_base(r) + v);
            }
            break;
        }
        case Scheme::Binary: {
            if (static_cast<int>(cfg.values.size()) != n_registers)
                throw std::invalid_argument("encode: register count mismatch");
            const int l = bits_per_register(0);
            for (int r = 0; r < n_registers; ++r) {
                const int v = cfg.values[r];
                if (v < 0 || v >= d) throw std::invalid_argument("encode: value out of alphabet");
                index |= static_cast<basis_t>(v) << register_base(r);
                (void)l;
            }
            break;
        }
        case Scheme::DirectOneHot: {
            // cfg.values[j] = item at slot j, 1-based; qubit (slot j, item u).
            const int n = d;
            if (static_cast<int>(cfg.values.size()) != n)
                throw std::invalid_argument("encode: slot count mismatch");
            for (int j = 0; j < n; ++j) {
                const int u = cfg.values[j];
                if (u < 1 || u > n) throw std::invalid_argument("encode: item out of range");
                index |= basis_t{1} << (j * n + (u - 1));
            }
            break;
        }
        case Scheme::AbsoluteOneHot: {
            if (static_cast<int>(cfg.values.size()) != n_registers)
                throw std::invalid_argument("encode: register count mismatch");
            for (int r = 0; r < n_registers; ++r) {
                const auto& w = windows[r];
                const auto it = std::find(w.begin(), w.end(), cfg.values[r]);
                if (it == w.end()) throw std::invalid_argument("encode: value outside window");
                index |= basis_t{1} << (register_base(r) + static_cast<int>(it - w.begin()));
            }
            break;
        }
    }
    if (!slack_bits.empty()) {
        if (cfg.slack.size() != slack_bits.size())
            throw std::invalid_argument("encode: slack count mismatch");
        for (std::size_t i = 0; i < slack_bits.size(); ++i) {
            const int y = cfg.slack[i];
            if (y < 0 || y >= (1 << slack_bits[i]))
                throw std::invalid_argument("encode: slack out of range");
            index |= static_cast<basis_t>(y) << slack_base(static_cast<int>(i));
        }
    }
    return index;
}

std::optional<Configuration> Encoding::decode(basis_t index) const {
    Configuration cfg;
    auto one_hot_value = [&](int base, int width) -> int {
        const basis_t sub = (index >> base) & ((basis_t{1} << width) - 1);
        if (std::popcount(sub) != 1) return -1;
        return std::countr_zero(sub);
    };

    switch (scheme) {
        case Scheme::OneHot: {
            cfg.kind = Configuration::Kind::Dits;
            for (int r = 0; r < n_registers; ++r) {
                const int v = one_hot_value(register_base(r), d);
                if (v < 0) return std::nullopt;
                cfg.values.push_back(v);
            }
            break;
        }
        case Scheme::Binary: {
            cfg.kind = Configuration::Kind::Dits;
            const int l = bits_per_register(0);
            for (int r = 0; r < n_registers; ++r) {
                const int v =
                    static_cast<int>((index >> register_base(r)) & ((basis_t{1} << l) - 1));
                if (v >= d) return std::nullopt;
                cfg.values.push_back(v);
            }
            break;
        }
        case Scheme::DirectOneHot: {
            cfg.kind = Configuration::Kind::Ordering;
            const int n = d;
            std::vector<int> seen(n + 1, 0);
            for (int j = 0; j < n; ++j) {
                const int u = one_hot_value(j * n, n);
                if (u < 0) return std::nullopt;  // row sum != 1
                cfg.values.push_back(u + 1);
                seen[u + 1] += 1;
            }
            for (int u = 1; u <= n; ++u) {
                if (seen[u] != 1) return std::nullopt;  // column sum != 1
            }
            break;
        }
        case Scheme::AbsoluteOneHot: {
            cfg.kind = Configuration::Kind::Schedule;
            for (int r = 0; r < n_registers; ++r) {
                const int k = one_hot_value(register_base(r),
                                            static_cast<int>(windows[r].size()));
                if (k < 0) return std::nullopt;
                cfg.values.push_back(windows[r][k]);
            }
            break;
        }
    }
    for (std::size_t i = 0; i < slack_bits.size(); ++i) {
        const int y = static_cast<int>((index >> slack_base(static_cast<int>(i))) &
                                       ((basis_t{1} << slack_bits[i]) - 1));
        cfg.slack.push_back(y);
    }
    // Reject stray bits above the encoded width.
    if (n_qubits() < 64 && (index >> n_qubits()) != 0) return std::nullopt;
    return cfg;
}

}  // namespace qaoakit
