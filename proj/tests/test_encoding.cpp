#include <algorithm>
#include <bit>

#include "doctest.h"
#include "qaoakit/encoding.hpp"
#include "qaoakit/problems.hpp"

using namespace qaoakit;

namespace {
Configuration dits(std::vector<int> values) {
    Configuration c;
    c.kind = Configuration::Kind::Dits;
    c.values = std::move(values);
    return c;
}
}  // namespace

TEST_CASE("one-hot encode/decode") {
    const Encoding enc = Encoding::one_hot(3, 1);
    CHECK(enc.n_qubits() == 3);
    const basis_t idx = enc.encode(dits({1}));
    CHECK(idx == 0b010);  // value 1 sets the middle qubit
    const auto back = enc.decode(idx);
    REQUIRE(back.has_value());
    CHECK(back->values == std::vector<int>{1});

    CHECK(!enc.decode(0b011).has_value());  // Hamming weight 2
    CHECK(!enc.decode(0b000).has_value());
}

TEST_CASE("binary encode/decode") {
    const Encoding enc = Encoding::binary(4, 1);
    CHECK(enc.n_qubits() == 2);
    CHECK(enc.encode(dits({2})) == 0b10);  // least significant bit first
    // d = 2^l: decode is total
    for (basis_t x = 0; x < 4; ++x) CHECK(enc.decode(x).has_value());

    const Encoding enc3 = Encoding::binary(3, 1);
    CHECK(!enc3.decode(0b11).has_value());  // value 3 outside the alphabet
}

TEST_CASE("direct one-hot encodes orderings as permutation matrices") {
    const Encoding enc = Encoding::direct_one_hot(3);
    CHECK(enc.n_qubits() == 9);
    Configuration ord;
    ord.kind = Configuration::Kind::Ordering;
    ord.values = {2, 3, 1};
    const basis_t idx = enc.encode(ord);
    // Slot-major layout: qubit (slot j, city u) = (j-1)*3 + (u-1).
    CHECK(((idx >> 1) & 1) == 1);  // city 2 at slot 1
    CHECK(((idx >> 5) & 1) == 1);  // city 3 at slot 2
    CHECK(((idx >> 6) & 1) == 1);  // city 1 at slot 3
    const auto back = enc.decode(idx);
    REQUIRE(back.has_value());
    CHECK(back->values == std::vector<int>{2, 3, 1});

    // Row sums fine but column sums violated: city 1 twice.
    const basis_t bad = basis_t{1} | (basis_t{1} << 3) | (basis_t{1} << 7);
    CHECK(!enc.decode(bad).has_value());
}

TEST_CASE("absolute one-hot windows") {
    const Encoding enc = Encoding::absolute_one_hot({{0, 1, 2}, {0, 1}});
    CHECK(enc.n_qubits() == 5);
    Configuration sch;
    sch.kind = Configuration::Kind::Schedule;
    sch.values = {2, 0};
    const basis_t idx = enc.encode(sch);
    CHECK(idx == (basis_t{1} << 2 | basis_t{1} << 3));
    const auto back = enc.decode(idx);
    REQUIRE(back.has_value());
    CHECK(back->values == std::vector<int>{2, 0});
}

TEST_CASE("enumerate_feasible on the catalog examples") {
    SUBCASE("independent sets of the path graph") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        const auto f = enumerate_feasible(inst, default_encoding(inst));
        CHECK(f == std::vector<basis_t>{0b000, 0b001, 0b010, 0b100, 0b101});
    }
    SUBCASE("all colorings are feasible for max-colorable-subgraph") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxColorableSubgraph;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(2);
        inst.kappa = 3;
        const auto f = enumerate_feasible(inst, default_encoding(inst));
        CHECK(f.size() == 9);
    }
    SUBCASE("TSP n=3 has 3! feasible orderings") {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = 3;
        inst.tsp.dist.assign(3, std::vector<double>(3, 1.0));
        const auto f = enumerate_feasible(inst, default_encoding(inst));
        CHECK(f.size() == 6);
    }
}

TEST_CASE("round trip and injectivity over feasible sets") {
    std::vector<ProblemInstance> instances;
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxColorableSubgraph;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::cycle(3);
        inst.kappa = 3;
        instances.push_back(inst);
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsTotalTardiness;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2, 1};
        inst.sms.d = {1, 2, 3};
        inst.sms.w = {1, 1, 1};
        instances.push_back(inst);
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsReleaseDates;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {2, 3};
        inst.sms.r = {0, 1};
        inst.sms.w = {1, 1};
        inst.sms.horizon = 4;
        instances.push_back(inst);
    }
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsSquaredTardiness;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {2, 3};
        inst.sms.w = {1, 2};
        instances.push_back(inst);
    }

    for (const auto& inst : instances) {
        const Encoding enc = default_encoding(inst);
        std::vector<basis_t> seen;
        const std::uint64_t total = inst.config_space_size();
        for (std::uint64_t i = 0; i < total; ++i) {
            const Configuration cfg = inst.config(i);
            if (!inst.is_feasible(cfg)) continue;
            const basis_t idx = enc.encode(cfg);
            const auto back = enc.decode(idx);
            REQUIRE(back.has_value());
            CHECK(back->values == cfg.values);
            CHECK(back->slack == cfg.slack);
            seen.push_back(idx);
        }
        std::sort(seen.begin(), seen.end());
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());  // injective
    }
}

TEST_CASE("one-hot feasible indices have unit weight per register") {
    ProblemInstance inst;
    inst.kind = ProblemKind::MinGraphColoring;
    inst.sense = Sense::Minimize;
    inst.graph = Graph::path(3);
    const Encoding enc = default_encoding(inst);
    for (basis_t idx : enumerate_feasible(inst, enc)) {
        for (int r = 0; r < enc.n_registers; ++r) {
            const basis_t sub = (idx >> enc.register_base(r)) & ((basis_t{1} << enc.d) - 1);
            CHECK(std::popcount(sub) == 1);
        }
    }
}

TEST_CASE("decode succeeds exactly on the encode image") {
    std::vector<Encoding> encodings = {
        Encoding::one_hot(3, 2),
        Encoding::binary(3, 2),
        Encoding::direct_one_hot(3),
        Encoding::absolute_one_hot({{0, 1, 2}, {1, 3}}),
    };
    for (const auto& enc : encodings) {
        for (basis_t x = 0; x < (basis_t{1} << enc.n_qubits()); ++x) {
            const auto cfg = enc.decode(x);
            if (cfg) {
                CHECK(enc.encode(*cfg) == x);
            }
        }
    }
}

TEST_CASE("encode validates dimensions") {
    const Encoding enc = Encoding::one_hot(3, 2);
    CHECK_THROWS_AS(enc.encode(dits({0})), std::invalid_argument);
    CHECK_THROWS_AS(enc.encode(dits({0, 3})), std::invalid_argument);
}
