#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaoakit/types.hpp"

namespace qaoakit {

// A point of a problem's configuration space.
//  Dits:     values[i] in [0, d) per register (bits are d = 2)
//  Ordering: values[j] = item visited/run at slot j (1-based permutation)
//  Schedule: values[i] = start time of item i (from the encoding's window)
// `slack` carries the optional per-item slack variables.
struct Configuration {
    enum class Kind { Dits, Ordering, Schedule };
    Kind kind = Kind::Dits;
    std::vector<int> values;
    std::vector<int> slack;

    bool operator==(const Configuration&) const = default;
    std::string text() const;
};

// Register layout is item-major, value-minor: register i occupies a
// contiguous qubit block, least significant qubit first.
struct Encoding {
    enum class Scheme { OneHot, Binary, DirectOneHot, AbsoluteOneHot };
    Scheme scheme = Scheme::OneHot;

    int n_registers = 0;
    int d = 2;  // alphabet size (OneHot/Binary); item count for DirectOneHot

    // AbsoluteOneHot: allowed values per register, one qubit per value.
    std::vector<std::vector<int>> windows;

    // Binary slack registers appended after the main block (SMS variants):
    // slack_bits[i] bits for slack variable i, least significant first.
    std::vector<int> slack_bits;

    static Encoding one_hot(int d, int n_registers);
    static Encoding binary(int d, int n_registers);
    static Encoding direct_one_hot(int n_items);
    static Encoding absolute_one_hot(std::vector<std::vector<int>> windows);

    int bits_per_register(int reg) const;
    int register_base(int reg) const;
    int main_qubits() const;  // qubits before the slack block
    int slack_base(int i) const;
    int n_qubits() const;

    basis_t encode(const Configuration& cfg) const;
    std::optional<Configuration> decode(basis_t index) const;
};

}  // namespace qaoakit
