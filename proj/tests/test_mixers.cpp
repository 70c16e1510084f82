#include <numbers>
#include <random>

#include "doctest.h"
#include "qaoakit/mixers.hpp"
#include "test_util.hpp"
#include "qaoakit/verify.hpp"

using namespace qaoakit;

namespace {
constexpr double pi = std::numbers::pi;

ProblemInstance colorable(Graph g, int kappa) {
    ProblemInstance inst;
    inst.kind = ProblemKind::MaxColorableSubgraph;
    inst.sense = Sense::Maximize;
    inst.graph = std::move(g);
    inst.kappa = kappa;
    return inst;
}
}  // namespace

TEST_CASE("partial mixer catalogs have the compendium cardinalities") {
    SUBCASE("one ring mixer per vertex, kappa couplings each") {
        const ProblemInstance inst = colorable(Graph::cycle(4), 3);
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        const auto partials = build_partial_mixers(inst, enc, mo);
        CHECK(partials.size() == 4);
        for (const auto& pm : partials) CHECK(pm.generator.size() == 3);
    }
    SUBCASE("controlled-X partials carry the neighborhood controls") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        const auto partials = build_partial_mixers(inst, default_encoding(inst), mo);
        CHECK(partials.size() == 3);
        CHECK(partials[1].control_support() == std::vector<int>{0, 2});  // vertex 2
    }
    SUBCASE("ordering swaps: cyclic vs path positions") {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = 3;
        inst.tsp.dist.assign(3, std::vector<double>(3, 1.0));
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::OrderingSwap;
        mo.cyclic_positions = true;
        CHECK(build_partial_mixers(inst, enc, mo).size() == 9);  // 3 slots x 3 pairs
        mo.cyclic_positions = false;
        CHECK(build_partial_mixers(inst, enc, mo).size() == 6);  // (n-1) C(n,2)
    }
    SUBCASE("controlled swaps count kappa(kappa-1)n/2") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MinGraphColoring;
        inst.sense = Sense::Minimize;
        inst.graph = Graph::complete(3);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledSwap;
        const auto partials = build_partial_mixers(inst, default_encoding(inst), mo);
        CHECK(partials.size() == 4 * 3 * 3 / 2);  // kappa = 4
    }
}

TEST_CASE("edge coloring of complete graphs") {
    SUBCASE("n = 4 matches the polygon construction") {
        const auto parts = edge_coloring_complete_graph(4);
        REQUIRE(parts.size() == 3);
        CHECK(parts[0] == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
        CHECK(parts[1] == std::vector<std::pair<int, int>>{{1, 3}, {2, 4}});
        CHECK(parts[2] == std::vector<std::pair<int, int>>{{1, 4}, {2, 3}});
    }
    SUBCASE("n = 2 is a single part") {
        const auto parts = edge_coloring_complete_graph(2);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0] == std::vector<std::pair<int, int>>{{1, 2}});
    }
    SUBCASE("properness and class counts for n = 2..12") {
        for (int n = 2; n <= 12; ++n) {
            const auto parts = edge_coloring_complete_graph(n);
            CHECK(static_cast<int>(parts.size()) == (n % 2 == 0 ? n - 1 : n));
            int edges = 0;
            for (const auto& part : parts) {
                edges += static_cast<int>(part.size());
                for (std::size_t i = 0; i < part.size(); ++i)
                    for (std::size_t j = i + 1; j < part.size(); ++j) {
                        CHECK(part[i].first != part[j].first);
                        CHECK(part[i].first != part[j].second);
                        CHECK(part[i].second != part[j].first);
                        CHECK(part[i].second != part[j].second);
                    }
            }
            CHECK(edges == n * (n - 1) / 2);
        }
    }
}

TEST_CASE("parity partition shapes") {
    SUBCASE("d = 4 gives two parts of two couplings") {
        const ProblemInstance inst = colorable(Graph::path(1), 4);
        const Encoding enc = Encoding::one_hot(4, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        const auto spec = build_mixer(inst, enc, mo);
        REQUIRE(spec.partition.parts.size() == 2);
        CHECK(spec.partition.parts[0].size() == 2);
        CHECK(spec.partition.parts[1].size() == 2);
    }
    SUBCASE("d = 5 adds the wrap part") {
        const ProblemInstance inst = colorable(Graph::path(1), 5);
        const Encoding enc = Encoding::one_hot(5, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        const auto spec = build_mixer(inst, enc, mo);
        REQUIRE(spec.partition.parts.size() == 3);
        CHECK(spec.partition.parts[0].size() == 2);
        CHECK(spec.partition.parts[1].size() == 2);
        CHECK(spec.partition.parts[2].size() == 1);
    }
    SUBCASE("greedy partition for MIS on the path") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        mo.strategy = PartitionStrategy::GreedyCommuting;
        const auto spec = build_mixer(inst, default_encoding(inst), mo);
        REQUIRE(spec.partition.parts.size() == 2);
        CHECK(spec.partition.parts[0].size() == 2);  // vertices 1 and 3
        CHECK(spec.partition.parts[1].size() == 1);  // vertex 2
    }
    SUBCASE("every strategy keeps parts commuting") {
        ProblemInstance inst;
        inst.kind = ProblemKind::SmsTotalTardiness;
        inst.sense = Sense::Minimize;
        inst.sms.p = {1, 2};
        inst.sms.d = {1, 2};
        inst.sms.w = {1, 1};
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::TimeSwap;
        mo.strategy = PartitionStrategy::TimeColor;
        const auto spec = build_mixer(inst, enc, mo);
        CHECK(spec.partition.commuting_within_parts());
    }
}

TEST_CASE("partitioned realizations") {
    SUBCASE("ring d = 3 compiles to three XY rotations in three layers") {
        const ProblemInstance inst = colorable(Graph::path(1), 3);
        const Encoding enc = Encoding::one_hot(3, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        const auto real = realize_partitioned(build_mixer(inst, enc, mo));
        CHECK(real.gates.size() == 3);
        for (const auto& g : real.gates) CHECK(g.kind == GateKind::XY);
        CHECK(real.parts == 3);
    }
    SUBCASE("MIS path compiles to controlled X rotations in two layers") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        const auto real = realize_partitioned(build_mixer(inst, default_encoding(inst), mo));
        REQUIRE(real.gates.size() == 3);
        CHECK(real.parts == 2);
        CHECK(real.gates[0].controls.size() == 1);
        CHECK(real.gates[1].controls.size() == 1);
        CHECK(real.gates[2].controls.size() == 2);
    }
    SUBCASE("TSP color-parity uses (n-1) C(n,2) four-qubit gates within depth 2n") {
        ProblemInstance inst;
        inst.kind = ProblemKind::Tsp;
        inst.sense = Sense::Minimize;
        inst.tsp.n = 4;
        inst.tsp.dist.assign(4, std::vector<double>(4, 1.0));
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::OrderingSwap;
        mo.strategy = PartitionStrategy::ColorParity;
        const auto real = realize_partitioned(build_mixer(inst, enc, mo));
        CHECK(real.gates.size() == 18);
        for (const auto& g : real.gates) CHECK(g.targets.size() == 4);
        CHECK(real.parts <= 8);
    }
}

TEST_CASE("simultaneous mixers") {
    SUBCASE("a single partial matches its partitioned realization") {
        const ProblemInstance inst = colorable(Graph::path(1), 2);
        const Encoding enc = Encoding::one_hot(2, 1);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Singleton;
        const auto spec = build_mixer(inst, enc, mo);
        const double beta = 0.41;
        const DenseMatrix sim = realize_simultaneous(spec, beta);
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {beta};
        const auto real = realize_partitioned(spec);
        const DenseMatrix part = dense_circuit_matrix(real.gates, 2, sched);
        CHECK(max_abs_diff(sim, part) < 1e-10);
    }
    SUBCASE("commuting partials factor exactly") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxCut;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(2);
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::BitFlipX;
        const auto spec = build_mixer(inst, enc, mo);
        const DenseMatrix sim = realize_simultaneous(spec, 0.73);
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {0.73};
        const DenseMatrix part =
            dense_circuit_matrix(realize_partitioned(spec).gates, 2, sched);
        CHECK(max_abs_diff(sim, part) < 1e-10);
    }
    SUBCASE("MIS path simultaneous mixer matches the eigen oracle route") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        const Encoding enc = default_encoding(inst);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        mo.simultaneous = true;
        const auto spec = build_mixer(inst, enc, mo);
        const DenseMatrix dense = realize_simultaneous(spec, 0.3);
        // Route 2: the Expm gate applied to all basis states.
        const auto real = realize_simultaneous_gate(spec);
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {0.3};
        const DenseMatrix via_gate = dense_circuit_matrix(real.gates, 3, sched);
        CHECK(max_abs_diff(dense, via_gate) < 1e-10);
        CHECK(is_unitary(dense, 1e-10));
    }
}

TEST_CASE("MIS simultaneous mixer matches the eigendecomposition oracle") {
    ProblemInstance inst;
    inst.kind = ProblemKind::MaxIndependentSet;
    inst.sense = Sense::Maximize;
    inst.graph = Graph::path(3);
    MixerOptions mo;
    mo.kind = MixerKind::ControlledX;
    mo.simultaneous = true;
    const auto spec = build_mixer(inst, default_encoding(inst), mo);
    std::vector<HermitianTerm> terms;
    for (const auto& pm : spec.partials)
        terms.insert(terms.end(), pm.generator.begin(), pm.generator.end());
    const DenseMatrix h = terms_to_dense(terms, 3);
    const DenseMatrix want = qaoakit::testing::expm_eigen_oracle(h, 0.3);
    CHECK(max_abs_diff(realize_simultaneous(spec, 0.3), want) < 1e-10);
}

TEST_CASE("exact commutators vanish inside every part") {
    std::vector<MixerSpec> specs;
    {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        MixerOptions mo;
        mo.kind = MixerKind::ControlledX;
        specs.push_back(build_mixer(inst, default_encoding(inst), mo));
    }
    {
        const ProblemInstance inst = colorable(Graph::path(2), 4);
        const Encoding enc = Encoding::one_hot(4, 2);
        MixerOptions mo;
        mo.kind = MixerKind::Ring;
        mo.strategy = PartitionStrategy::Parity;
        specs.push_back(build_mixer(inst, enc, mo));
    }
    for (const auto& spec : specs) {
        const int n = spec.n_main_qubits;
        for (const auto& part : spec.partition.parts) {
            for (std::size_t i = 0; i < part.size(); ++i) {
                for (std::size_t j = i + 1; j < part.size(); ++j) {
                    const DenseMatrix a = terms_to_dense(part[i].generator, n);
                    const DenseMatrix b = terms_to_dense(part[j].generator, n);
                    CHECK(max_abs_diff(matmul(a, b), matmul(b, a)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("binary parity mixer structure") {
    SUBCASE("l = 1 reduces to X-conjugated rotations") {
        const Encoding enc = Encoding::binary(2, 1);
        const auto gates = binary_parity_mixer(enc, 0);
        REQUIRE(gates.size() == 4);
        CHECK(gates[0].kind == GateKind::PauliX);
        CHECK(gates[1].kind == GateKind::RX);
        CHECK(gates[2].kind == GateKind::PauliX);
        CHECK(gates[3].kind == GateKind::RX);
    }
    SUBCASE("gate count is 2l controlled-X plus two rotations per register") {
        const Encoding enc = Encoding::binary(8, 1);
        const auto gates = binary_parity_mixer(enc, 0);
        int mcx = 0, rot = 0;
        for (const auto& g : gates) {
            if (g.kind == GateKind::PauliX) ++mcx;
            if (g.kind == GateKind::RX) ++rot;
        }
        CHECK(mcx == 6);
        CHECK(rot == 2);
    }
    SUBCASE("binary realization equals the encoded one-hot parity action") {
        // d = 4, beta arbitrary: compare against the two-level generator route.
        const Encoding enc = Encoding::binary(4, 1);
        const ProblemInstance inst = colorable(Graph::path(1), 4);
        MixerOptions mo;
        mo.kind = MixerKind::BinaryParity;
        mo.strategy = PartitionStrategy::Parity;
        const auto spec = build_mixer(inst, enc, mo);
        const auto real = realize_partitioned(spec);
        QaoaSchedule sched;
        sched.gammas = {0.0};
        sched.betas = {pi / 4};
        const DenseMatrix via_circuit = dense_circuit_matrix(real.gates, 2, sched);

        // Oracle: exponentials of the odd/even two-level sums, in order.
        DenseMatrix odd(4), even(4);
        odd(1, 2) = odd(2, 1) = 1.0;   // values (1,2)
        odd(3, 0) = odd(0, 3) = 1.0;   // wrap (3,0)
        even(0, 1) = even(1, 0) = 1.0; // (0,1)
        even(2, 3) = even(3, 2) = 1.0; // (2,3)
        const DenseMatrix want =
            matmul(expm_hermitian(even, pi / 4), expm_hermitian(odd, pi / 4));
        CHECK(max_abs_diff(via_circuit, want) < 1e-10);
    }
}

TEST_CASE("feasibility preservation with a deliberately broken mixer fails") {
    ProblemInstance inst;
    inst.kind = ProblemKind::MaxIndependentSet;
    inst.sense = Sense::Maximize;
    inst.graph = Graph::path(3);
    const Encoding enc = default_encoding(inst);

    MixerOptions mo;
    mo.kind = MixerKind::ControlledX;
    const auto spec = build_mixer(inst, enc, mo);
    auto good = realize_partitioned(spec);
    const auto feasible = enumerate_feasible(inst, enc);
    const auto betas = criterion_beta_samples(1, 5);
    CHECK(check_feasibility_preservation(good, feasible, betas).status ==
          VerificationReport::Status::Pass);

    // Drop the controls: plain X mixing leaks out of the independent sets.
    MixerRealization bad = good;
    for (auto& g : bad.gates) g.controls.clear();
    const auto rep = check_feasibility_preservation(bad, feasible, betas);
    CHECK(rep.status == VerificationReport::Status::Fail);
    CHECK(rep.measured > 1e-3);
}

TEST_CASE("order within a commuting part does not change the unitary") {
    ProblemInstance inst;
    inst.kind = ProblemKind::MaxIndependentSet;
    inst.sense = Sense::Maximize;
    inst.graph = Graph::path(3);
    const Encoding enc = default_encoding(inst);
    MixerOptions mo;
    mo.kind = MixerKind::ControlledX;
    MixerSpec spec = build_mixer(inst, enc, mo);
    QaoaSchedule sched;
    sched.gammas = {0.0};
    sched.betas = {0.9};
    const DenseMatrix u1 =
        dense_circuit_matrix(realize_partitioned(spec).gates, 3, sched);
    std::swap(spec.partition.parts[0][0], spec.partition.parts[0][1]);
    const DenseMatrix u2 =
        dense_circuit_matrix(realize_partitioned(spec).gates, 3, sched);
    CHECK(max_abs_diff(u1, u2) < 1e-12);
}

TEST_CASE("repeats multiply the realized gate list") {
    const ProblemInstance inst = colorable(Graph::path(1), 3);
    const Encoding enc = Encoding::one_hot(3, 1);
    MixerOptions mo;
    mo.kind = MixerKind::Ring;
    mo.strategy = PartitionStrategy::Parity;
    mo.repeats = 3;
    const auto real = realize_partitioned(build_mixer(inst, enc, mo));
    CHECK(real.gates.size() == 9);
    CHECK(real.parts == 9);
}

TEST_CASE("nearby-values r = 2 extends the coupling set") {
    const ProblemInstance inst = colorable(Graph::path(1), 5);
    const Encoding enc = Encoding::one_hot(5, 1);
    MixerOptions mo;
    mo.kind = MixerKind::NearbyValues;
    mo.r = 2;
    mo.strategy = PartitionStrategy::GreedyCommuting;
    const auto spec = build_mixer(inst, enc, mo);
    REQUIRE(spec.partials.size() == 1);
    CHECK(spec.partials[0].generator.size() == 10);  // 5 stride-1 + 5 stride-2
    CHECK(spec.partition.commuting_within_parts());
    // Still feasibility preserving.
    const auto real = realize_partitioned(spec);
    const auto feasible = enumerate_feasible(inst, enc);
    CHECK(check_feasibility_preservation(real, feasible, {0.4, 1.1}).status ==
          VerificationReport::Status::Pass);
}

TEST_CASE("strategy/label mismatch is rejected") {
    ProblemInstance inst;
    inst.kind = ProblemKind::Tsp;
    inst.sense = Sense::Minimize;
    inst.tsp.n = 3;
    inst.tsp.dist.assign(3, std::vector<double>(3, 1.0));
    const Encoding enc = default_encoding(inst);
    MixerOptions mo;
    mo.kind = MixerKind::OrderingSwap;
    mo.strategy = PartitionStrategy::Parity;  // positions alone cannot commute
    CHECK_THROWS_AS(build_mixer(inst, enc, mo), std::invalid_argument);
}
