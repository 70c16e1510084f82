#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "qaoakit/circuit.hpp"

namespace qaoakit {

// Workers used for parallel sweeps; honors QAOA_KIT_THREADS.
int worker_count();

// Derives a stream seed from the root seed and a stream name (splitmix64 of
// root xor fnv1a(name)).
std::uint64_t derive_seed(std::uint64_t root, const std::string& stream);

AmplitudeVector simulate(const Circuit& circuit, const QaoaSchedule& schedule);

struct ExpectationResult {
    double expectation = 0.0;     // sum over codewords of |amp|^2 f(decode)
    double infeasible_mass = 0.0;  // squared amplitude outside the feasible set
};
ExpectationResult expectation(const AmplitudeVector& state, const ProblemInstance& inst,
                              const Encoding& enc);

// i.i.d. computational-basis draws; reproducible per seed.
std::map<basis_t, int> sample(const AmplitudeVector& state, int shots, std::uint64_t seed);

// Shot-based estimate of <f> from a sample histogram (hardware-style
// estimation; the exact statevector expectation is the default elsewhere).
double expectation_from_counts(const std::map<basis_t, int>& counts,
                               const ProblemInstance& inst, const Encoding& enc);

struct OptimizerConfig {
    enum class Strategy { Grid, CoordinateDescent, PatternSearch };
    Strategy strategy = Strategy::Grid;
    int grid_points = 32;      // per axis
    int restarts = 2;          // coordinate descent
    int iterations = 8;        // coordinate descent cycles
    long budget = 2000;        // pattern search evaluation cap
    double gamma_lo = 0.0, gamma_hi = 6.283185307179586477;  // [0, 2pi)
    double beta_lo = 0.0, beta_hi = 3.141592653589793238;    // [0, pi)
};

struct OptimizeResult {
    QaoaSchedule schedule;
    double expectation = 0.0;
    long evaluations = 0;
};

// Best schedule over the strategy's evaluations plus any seed points;
// deterministic per seed, ties broken by lexicographically smallest schedule.
OptimizeResult optimize(const Circuit& circuit, const ProblemInstance& inst, const Encoding& enc,
                        const OptimizerConfig& config, std::uint64_t seed,
                        const std::vector<QaoaSchedule>& seed_points = {});

// <f>/OPT for maximization, OPT/<f> for minimization; nullopt when OPT = 0.
std::optional<double> approximation_ratio(double expectation_value, const ProblemInstance& inst);

struct RunResult {
    QaoaSchedule schedule;
    double expectation = 0.0;
    double infeasible_mass = 0.0;
    std::optional<double> ratio;
    std::optional<Configuration> best_sampled;
    double best_sampled_value = 0.0;
    std::map<basis_t, int> samples;
    std::uint64_t seed = 0;
    long evaluations = 0;
};

}  // namespace qaoakit
