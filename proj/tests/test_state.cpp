#include <numbers>

#include "doctest.h"
#include "qaoakit/state.hpp"
#include "qaoakit/verify.hpp"
#include "test_util.hpp"

using namespace qaoakit;
using qaoakit::testing::expm_eigen_oracle;
using qaoakit::testing::jacobi_eigen;
using qaoakit::testing::random_state;

namespace {
constexpr double pi = std::numbers::pi;
const QaoaSchedule no_angles{{}, {}};

GatePrimitive gate(GateKind kind, std::vector<int> targets, double theta) {
    GatePrimitive g;
    g.kind = kind;
    g.targets = std::move(targets);
    g.angle = AngleRole::fixed(theta);
    return g;
}
}  // namespace

TEST_CASE("x rotation at zero angle is the identity") {
    AmplitudeVector s = AmplitudeVector::basis_state(1, 0);
    apply_gate(s, gate(GateKind::RX, {0}, 0.0), no_angles);
    CHECK(std::abs(s.amps[0] - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(s.amps[1]) < 1e-15);
}

TEST_CASE("swap exponential at pi/2 maps |01> to i|10>") {
    // e^{i theta SWAP} = cos(theta) I + i sin(theta) SWAP
    AmplitudeVector s = AmplitudeVector::basis_state(2, 0b01);
    apply_gate(s, gate(GateKind::SwapExp, {0, 1}, pi / 2), no_angles);
    CHECK(std::abs(s.amps[0b10] - cplx{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(s.amps[0b01]) < 1e-12);
}

TEST_CASE("two-level rotation matches the 2x2 exponential oracle") {
    // beta = pi/4 between labels a = |100>, b = |010> on three qubits.
    GatePrimitive g = gate(GateKind::TwoLevel, {0, 1, 2}, pi / 4);
    g.label_a = 0b001;
    g.label_b = 0b010;
    AmplitudeVector s = AmplitudeVector::basis_state(3, 0b001);
    apply_gate(s, g, no_angles);
    CHECK(std::abs(s.amps[0b001] - std::cos(pi / 4)) < 1e-12);
    CHECK(std::abs(s.amps[0b010] - cplx{0.0, -std::sin(pi / 4)}) < 1e-12);

    DenseMatrix h(2);
    h(0, 1) = h(1, 0) = 1.0;
    const DenseMatrix u = expm_eigen_oracle(h, pi / 4);
    CHECK(std::abs(u(0, 0) - s.amps[0b001]) < 1e-12);
    CHECK(std::abs(u(1, 0) - s.amps[0b010]) < 1e-12);
}

TEST_CASE("expm_hermitian basics") {
    SUBCASE("zero Hamiltonian gives the identity") {
        DenseMatrix h(4);
        const DenseMatrix u = expm_hermitian(h, 1.7);
        CHECK(max_abs_diff(u, DenseMatrix::identity(4)) < 1e-14);
    }
    SUBCASE("X at theta = pi/2 gives -iX") {
        DenseMatrix h(2);
        h(0, 1) = h(1, 0) = 1.0;
        const DenseMatrix u = expm_hermitian(h, pi / 2);
        CHECK(std::abs(u(0, 1) - cplx{0.0, -1.0}) < 1e-12);
        CHECK(std::abs(u(1, 0) - cplx{0.0, -1.0}) < 1e-12);
        CHECK(std::abs(u(0, 0)) < 1e-12);
    }
    SUBCASE("XX+YY on two qubits matches the eigendecomposition oracle") {
        std::vector<HermitianTerm> terms = {
            HermitianTerm::two_level({0, 1}, 0b01, 0b10, 2.0)};  // XX+YY
        const DenseMatrix h = terms_to_dense(terms, 2);
        const DenseMatrix got = expm_hermitian(h, pi / 4);
        const DenseMatrix want = expm_eigen_oracle(h, pi / 4);
        CHECK(max_abs_diff(got, want) < 1e-12);
    }
    SUBCASE("non-Hermitian input is rejected") {
        DenseMatrix h(2);
        h(0, 1) = 1.0;
        CHECK_THROWS_AS(expm_hermitian(h, 1.0), std::invalid_argument);
    }
}

TEST_CASE("jacobi oracle reconstructs its input") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    DenseMatrix h(8);
    for (std::size_t i = 0; i < 8; ++i) {
        h(i, i) = gauss(rng);
        for (std::size_t j = i + 1; j < 8; ++j) {
            h(i, j) = cplx{gauss(rng), gauss(rng)};
            h(j, i) = std::conj(h(i, j));
        }
    }
    const auto eig = jacobi_eigen(h);
    DenseMatrix rebuilt(8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < 8; ++k)
                acc += eig.vectors(i, k) * eig.values[k] * std::conj(eig.vectors(j, k));
            rebuilt(i, j) = acc;
        }
    CHECK(max_abs_diff(rebuilt, h) < 1e-12);
}

TEST_CASE("diagonal phase") {
    SUBCASE("gamma = 0 leaves the state unchanged") {
        AmplitudeVector s = AmplitudeVector::basis_state(2, 0b01);
        apply_diagonal_phase(s, [](basis_t) { return 3.0; }, 0.0);
        CHECK(std::abs(s.amps[0b01] - cplx{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("constant g is a global phase") {
        std::mt19937_64 rng(7);
        AmplitudeVector s = random_state(3, rng);
        AmplitudeVector t = s;
        apply_diagonal_phase(t, [](basis_t) { return 5.0; }, 0.9);
        CHECK(s.fidelity(t) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("triangle cut counts set the phase") {
        // g(x) = cut size of K3; x = 011 has cut 2.
        auto cut = [](basis_t x) {
            int c = 0;
            for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}})
                c += ((x >> u) & 1) != ((x >> v) & 1);
            return static_cast<double>(c);
        };
        CHECK(cut(0b011) == 2.0);
        AmplitudeVector s = AmplitudeVector::basis_state(3, 0b011);
        apply_diagonal_phase(s, cut, pi / 3);
        CHECK(std::abs(s.amps[0b011] - std::polar(1.0, -2 * pi / 3)) < 1e-12);
    }
}

TEST_CASE("norm preservation across all primitive kinds") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    std::vector<GatePrimitive> gates;
    gates.push_back(gate(GateKind::PauliX, {1}, 0.0));
    gates.push_back(gate(GateKind::Hadamard, {2}, 0.0));
    gates.push_back(gate(GateKind::RX, {0}, 0.0));
    gates.push_back(gate(GateKind::RZ, {3}, 0.0));
    gates.push_back(gate(GateKind::MultiZ, {0, 2, 3}, 0.0));
    gates.push_back(gate(GateKind::XY, {1, 3}, 0.0));
    {
        GatePrimitive g = gate(GateKind::TwoLevel, {0, 1, 2, 3}, 0.0);
        g.label_a = 0b0011;
        g.label_b = 0b1100;
        gates.push_back(g);
    }
    gates.push_back(gate(GateKind::SwapExp, {0, 2}, 0.0));
    {
        GatePrimitive g = gate(GateKind::CPhase, {}, 0.0);
        g.controls = {{0, 1}, {1, 0}};
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::DiagPhase, {0, 1}, 0.0);
        g.diag = make_diag_fn([](basis_t x) { return static_cast<double>(x * x); }, 2);
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::Expm, {0, 1, 2, 3}, 0.0);
        auto terms = std::make_shared<std::vector<HermitianTerm>>();
        terms->push_back(HermitianTerm::two_level({0, 1}, 0b01, 0b10, 1.0));
        terms->push_back(HermitianTerm::pauli_x(2, 0.7));
        g.ham = terms;
        gates.push_back(g);
    }

    for (int trial = 0; trial < 100; ++trial) {
        AmplitudeVector s = random_state(4, rng);
        GatePrimitive g = gates[trial % gates.size()];
        g.angle = AngleRole::fixed(angle(rng));
        apply_gate(s, g, no_angles);
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
    }
}

TEST_CASE("swap identity holds entrywise for 20 random angles") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const double theta = angle(rng);
        const DenseMatrix u =
            dense_gate_matrix(gate(GateKind::SwapExp, {0, 1}, theta), 2, no_angles);
        DenseMatrix want(4);
        for (std::size_t i = 0; i < 4; ++i) want(i, i) = std::cos(theta);
        const cplx is{0.0, std::sin(theta)};
        want(0, 0) += is;
        want(3, 3) += is;
        want(1, 2) += is;
        want(2, 1) += is;
        CHECK(max_abs_diff(u, want) < 1e-12);
    }
}

TEST_CASE("gate application matches the dense gate matrix on basis states") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    std::vector<GatePrimitive> gates;
    gates.push_back(gate(GateKind::RX, {2}, angle(rng)));
    gates.push_back(gate(GateKind::RZ, {0}, angle(rng)));
    gates.push_back(gate(GateKind::MultiZ, {0, 1, 3}, angle(rng)));
    gates.push_back(gate(GateKind::XY, {1, 2}, angle(rng)));
    gates.push_back(gate(GateKind::SwapExp, {0, 3}, angle(rng)));
    gates.push_back(gate(GateKind::Hadamard, {1}, 0.0));
    gates.push_back(gate(GateKind::PauliX, {3}, 0.0));
    {
        GatePrimitive g = gate(GateKind::TwoLevel, {0, 1, 2}, angle(rng));
        g.label_a = 0b101;
        g.label_b = 0b010;
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::RX, {1}, angle(rng));
        g.controls = {{0, 1}, {3, 0}};
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::CPhase, {}, angle(rng));
        g.controls = {{2, 1}};
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::DiagPhase, {1, 3}, angle(rng));
        g.diag = make_diag_fn([](basis_t x) { return 0.5 * x + 1.0; }, 2);
        gates.push_back(g);
    }
    {
        GatePrimitive g = gate(GateKind::Expm, {0, 1, 2, 3}, angle(rng));
        auto terms = std::make_shared<std::vector<HermitianTerm>>();
        terms->push_back(HermitianTerm::two_level({0, 2}, 0b01, 0b10, 1.3));
        terms->push_back(HermitianTerm::pauli_x(3, 0.4));
        g.ham = terms;
        gates.push_back(g);
    }
    {
        // Dense payload: exp(-i 0.7 (X ox X)) on two qubits.
        DenseMatrix h(4);
        h(0, 3) = h(3, 0) = h(1, 2) = h(2, 1) = 1.0;
        GatePrimitive g = gate(GateKind::Dense, {1, 2}, 0.0);
        g.dense = std::make_shared<DenseMatrix>(expm_hermitian(h, 0.7));
        g.controls = {{0, 1}};
        gates.push_back(g);
    }

    for (const auto& g : gates) {
        const DenseMatrix u = dense_gate_matrix(g, 4, no_angles);
        for (basis_t col = 0; col < 16; ++col) {
            AmplitudeVector s = AmplitudeVector::basis_state(4, col);
            apply_gate(s, g, no_angles);
            for (basis_t row = 0; row < 16; ++row) {
                CHECK(std::abs(s.amps[row] - u(row, col)) < 1e-10);
            }
        }
    }
}

TEST_CASE("controlled gates act as the identity on control-violating states") {
    GatePrimitive g = gate(GateKind::RX, {0}, 1.3);
    g.controls = {{1, 1}, {2, 0}};
    for (basis_t x = 0; x < 8; ++x) {
        const bool active = ((x >> 1) & 1) == 1 && ((x >> 2) & 1) == 0;
        if (active) continue;
        AmplitudeVector s = AmplitudeVector::basis_state(3, x);
        apply_gate(s, g, no_angles);
        for (basis_t y = 0; y < 8; ++y) {
            const cplx want = (y == x) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            CHECK(s.amps[y] == want);  // exact zeros
        }
    }
}

TEST_CASE("gate validation errors") {
    AmplitudeVector s = AmplitudeVector::basis_state(2, 0);
    CHECK_THROWS_AS(apply_gate(s, gate(GateKind::RX, {5}, 0.1), no_angles),
                    std::invalid_argument);
    GatePrimitive overlap = gate(GateKind::RX, {0}, 0.1);
    overlap.controls = {{0, 1}};
    CHECK_THROWS_AS(apply_gate(s, overlap, no_angles), std::invalid_argument);
    GatePrimitive unresolved = gate(GateKind::RX, {0}, 0.0);
    unresolved.angle = AngleRole::gamma(2);
    CHECK_THROWS_AS(apply_gate(s, unresolved, no_angles), std::invalid_argument);
}

TEST_CASE("non-unitary dense payloads are rejected") {
    DenseMatrix m(2);
    m(0, 0) = 2.0;  // not unitary
    GatePrimitive g = gate(GateKind::Dense, {0}, 0.0);
    g.dense = std::make_shared<DenseMatrix>(m);
    AmplitudeVector s = AmplitudeVector::basis_state(1, 0);
    CHECK_THROWS_AS(apply_gate(s, g, no_angles), std::invalid_argument);
}

TEST_CASE("expm cap and dimension checks") {
    std::vector<HermitianTerm> terms = {HermitianTerm::pauli_x(0)};
    AmplitudeVector s = AmplitudeVector::basis_state(1, 0);
    apply_expm_terms(s, terms, pi / 2);
    CHECK(std::abs(s.amps[1] - cplx{0.0, -1.0}) < 1e-12);  // e^{-i pi/2 X}|0> = -i|1>
}
