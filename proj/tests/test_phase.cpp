#include <random>

#include "doctest.h"
#include "qaoakit/phase.hpp"
#include "qaoakit/verify.hpp"

using namespace qaoakit;

TEST_CASE("pseudo-boolean substitution") {
    SUBCASE("x_u x_v expands to the quarter form") {
        Polynomial p;
        p.add({0, 1}, 1.0);
        const ZTerms z = pseudo_boolean_to_z_terms(p);
        CHECK(z.terms.at({}) == doctest::Approx(0.25));
        CHECK(z.terms.at({0}) == doctest::Approx(-0.25));
        CHECK(z.terms.at({1}) == doctest::Approx(-0.25));
        CHECK(z.terms.at({0, 1}) == doctest::Approx(0.25));
    }
    SUBCASE("constants stay identity terms") {
        const ZTerms z = pseudo_boolean_to_z_terms(Polynomial::constant(5.0));
        CHECK(z.terms.at({}) == doctest::Approx(5.0));
        CHECK(z.terms.size() == 1);
    }
    SUBCASE("expansion evaluates exactly on every assignment") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> coeff(-2, 2);
        Polynomial p;
        p.add({0}, coeff(rng));
        p.add({1, 3}, coeff(rng));
        p.add({0, 2, 3}, coeff(rng));
        p.add({0, 1, 2, 3}, coeff(rng));
        p.add({}, coeff(rng));
        const ZTerms z = pseudo_boolean_to_z_terms(p);
        for (basis_t x = 0; x < 16; ++x)
            CHECK(z.eval(x) == doctest::Approx(p.eval(x)).epsilon(1e-12));
    }
    SUBCASE("degree cap") {
        Polynomial p;
        p.add({0, 1, 2, 3, 4}, 1.0);
        CHECK_THROWS_AS(pseudo_boolean_to_z_terms(p), std::invalid_argument);
    }
}

TEST_CASE("affine_reduce drops one-hot register sums") {
    // One register, d = 3: f(x) = value picked out by single-Z terms with a
    // uniform coefficient is droppable.
    const Encoding enc = Encoding::one_hot(3, 1);
    ZTerms z;
    z.terms[{}] = 2.0;
    z.terms[{0}] = 0.5;
    z.terms[{1}] = 0.5;
    z.terms[{2}] = 0.5;
    z.terms[{0, 1}] = -0.25;
    const auto red = affine_reduce(z, enc);
    CHECK(red.reduced.terms.count({0}) == 0);
    CHECK(red.reduced.terms.count({}) == 0);
    // remaining -0.25 Z0Z1 normalized to 1: scale 1/(-0.25) = -4
    CHECK(red.affine.scale == doctest::Approx(-4.0));
    // constant: 2.0 + 0.5*(d-2) = 2.5; offset = -2.5 * -4 = 10
    CHECK(red.affine.offset == doctest::Approx(10.0));
    CHECK(red.reduced.terms.at({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("maxcut reduction drops the m/2 constant") {
    // f = sum NEQ = m/2 - (1/2) sum ZZ on a single edge.
    const Encoding enc = Encoding::binary(2, 2);
    Polynomial f;
    f.add({0}, 1.0);
    f.add({1}, 1.0);
    f.add({0, 1}, -2.0);
    const ZTerms z = pseudo_boolean_to_z_terms(f);
    const auto red = affine_reduce(z, enc);
    CHECK(red.affine.scale == doctest::Approx(-2.0));
    CHECK(red.affine.offset == doctest::Approx(1.0));  // g = m - 2f with m = 1
    CHECK(red.reduced.terms.size() == 1);
    CHECK(red.reduced.terms.at({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("full reduction reproduces the one-hot colorable-subgraph separator") {
    // kappa = 3 colors on a single edge: H = sum_a Z_{u,a} Z_{v,a}, g = kappa m - 4f.
    ProblemInstance inst;
    inst.kind = ProblemKind::MaxColorableSubgraph;
    inst.sense = Sense::Maximize;
    inst.graph = Graph::path(2);
    inst.kappa = 3;
    const Encoding enc = default_encoding(inst);

    Polynomial f;  // m - sum_e sum_a x_{u,a} x_{v,a}
    f.add({}, 1.0);
    for (int a = 0; a < 3; ++a) f.add({a, 3 + a}, -1.0);
    const auto red = affine_reduce(pseudo_boolean_to_z_terms(f), enc);
    CHECK(red.affine.scale == doctest::Approx(-4.0));
    CHECK(red.affine.offset == doctest::Approx(3.0));  // kappa * m
    CHECK(red.reduced.terms.size() == 3);
    for (int a = 0; a < 3; ++a) CHECK(red.reduced.terms.at({a, 3 + a}) == doctest::Approx(1.0));

    // And the built separator agrees term for term.
    const PhaseSeparator sep = build_phase_separator(inst, enc);
    CHECK(sep.encoded.size() == 3);
    CHECK(sep.affine.scale == doctest::Approx(-4.0));
    CHECK(sep.affine.offset == doctest::Approx(3.0));
}

TEST_CASE("separator affine relations across the catalog") {
    // g = scale * f + offset must hold exactly on every feasible codeword,
    // realized by the encoded circuit.
    for (const auto& pc : standard_catalog()) {
        INFO(pc.name);
        const auto rep = check_phase_separator(pc.sep, pc.inst, pc.enc);
        CHECK(rep.status == VerificationReport::Status::Pass);
    }
}

TEST_CASE("declared scales match the canonical separator forms") {
    auto scale_of = [](ProblemKind kind, int kappa) {
        ProblemInstance inst;
        inst.kind = kind;
        inst.sense = default_sense(kind);
        inst.graph = Graph::path(3);
        inst.kappa = kappa;
        const Encoding enc = default_encoding(inst);
        return build_phase_separator(inst, enc).affine.scale;
    };
    CHECK(scale_of(ProblemKind::MaxIndependentSet, 0) == doctest::Approx(-2.0));
    CHECK(scale_of(ProblemKind::MaxColorableSubgraph, 3) == doctest::Approx(-4.0));
    CHECK(scale_of(ProblemKind::MaxCut, 0) == doctest::Approx(-2.0));
}

TEST_CASE("encoded and semantic separators agree on the feasible subspace") {
    for (const auto& pc : standard_catalog()) {
        INFO(pc.name);
        const auto feasible = enumerate_feasible(pc.inst, pc.enc);
        QaoaSchedule sched;
        sched.gammas = {0.37};
        sched.betas = {0.0};
        // Relative phases must match: fix the first feasible state as reference.
        AmplitudeVector enc_state =
            AmplitudeVector::basis_state(pc.enc.n_qubits(), feasible.front());
        for (const auto& g : pc.sep.encoded) apply_gate(enc_state, g, sched);
        const cplx ref_enc = enc_state.amps[feasible.front()];
        const double ref_sem = (*pc.sep.g)(feasible.front());
        for (basis_t x : feasible) {
            AmplitudeVector s = AmplitudeVector::basis_state(pc.enc.n_qubits(), x);
            for (const auto& g : pc.sep.encoded) apply_gate(s, g, sched);
            const cplx got = s.amps[x] / ref_enc;
            const cplx want = std::polar(1.0, -sched.gammas[0] * ((*pc.sep.g)(x) - ref_sem));
            CHECK(std::abs(got - want) < 1e-10);
        }
    }
}

TEST_CASE("separators are diagonal") {
    // Applying the encoded circuit to a basis state yields the same basis
    // state up to phase, including outside the feasible subspace.
    for (const auto& pc : standard_catalog()) {
        INFO(pc.name);
        if (pc.enc.n_qubits() > 10) continue;
        QaoaSchedule sched;
        sched.gammas = {0.81};
        sched.betas = {0.0};
        const std::size_t dim = std::size_t{1} << pc.enc.n_qubits();
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            const basis_t x = rng() % dim;
            AmplitudeVector s = AmplitudeVector::basis_state(pc.enc.n_qubits(), x);
            for (const auto& g : pc.sep.encoded) apply_gate(s, g, sched);
            CHECK(std::abs(std::abs(s.amps[x]) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("weighted variants keep the affine relation") {
    SUBCASE("weighted maxcut") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxCut;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::cycle(4);
        inst.graph.weights = {0.5, 2.0, 1.25, 3.0};
        const Encoding enc = default_encoding(inst);
        const auto rep = check_phase_separator(build_phase_separator(inst, enc), inst, enc);
        CHECK(rep.status == VerificationReport::Status::Pass);
    }
    SUBCASE("vertex-weighted independent set") {
        ProblemInstance inst;
        inst.kind = ProblemKind::MaxIndependentSet;
        inst.sense = Sense::Maximize;
        inst.graph = Graph::path(3);
        inst.graph.vertex_weights = {1.0, 2.5, 0.75};
        const Encoding enc = default_encoding(inst);
        const auto rep = check_phase_separator(build_phase_separator(inst, enc), inst, enc);
        CHECK(rep.status == VerificationReport::Status::Pass);
    }
}

TEST_CASE("release-dates buffer phase override stays affine") {
    ProblemInstance inst;
    inst.kind = ProblemKind::SmsReleaseDates;
    inst.sense = Sense::Minimize;
    inst.sms.p = {1, 2};
    inst.sms.d = {2, 3};
    inst.sms.r = {0, 1};
    inst.sms.w = {1.0, 1.0};
    inst.sms.horizon = 4;
    inst.sms.buffer_phase = 7.0;  // constant B instead of b_j - d_j
    const Encoding enc = default_encoding(inst);
    const auto rep = check_phase_separator(build_phase_separator(inst, enc), inst, enc);
    CHECK(rep.status == VerificationReport::Status::Pass);
    // Buffered jobs contribute exactly B to the objective.
    Configuration cfg;
    cfg.kind = Configuration::Kind::Schedule;
    cfg.values = {0, inst.sms.buffer_time(1, 4)};
    CHECK(inst.objective(cfg) == doctest::Approx(7.0));
}

TEST_CASE("sms squared tardiness expansion matches the objective exhaustively") {
    ProblemInstance inst;
    inst.kind = ProblemKind::SmsSquaredTardiness;
    inst.sense = Sense::Minimize;
    inst.sms.p = {1, 2};
    inst.sms.d = {2, 3};
    inst.sms.w = {1.0, 2.0};
    const Encoding enc = default_encoding(inst);
    const PhaseSeparator sep = build_phase_separator(inst, enc);
    for (std::uint64_t i = 0; i < inst.config_space_size(); ++i) {
        const Configuration cfg = inst.config(i);
        const basis_t x = enc.encode(cfg);
        const double g = (*sep.g)(x);
        CHECK(g == doctest::Approx(sep.affine.scale * inst.objective(cfg) + sep.affine.offset)
                       .epsilon(1e-9));
    }
}
