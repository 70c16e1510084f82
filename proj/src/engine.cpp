#include "qaoakit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace qaoakit {

int worker_count() {
    if (const char* env = std::getenv("QAOA_KIT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::uint64_t derive_seed(std::uint64_t root, const std::string& stream) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : stream) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t z = root ^ h;
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

AmplitudeVector simulate(const Circuit& circuit, const QaoaSchedule& schedule) {
    AmplitudeVector state = AmplitudeVector::basis_state(circuit.total_qubits(), 0);
    for (const auto& gate : circuit.gates) apply_gate(state, gate, schedule);
    return state;
}

ExpectationResult expectation(const AmplitudeVector& state, const ProblemInstance& inst,
                              const Encoding& enc) {
    const int main_bits = enc.n_qubits();
    const basis_t main_mask =
        main_bits >= 64 ? ~basis_t{0} : (basis_t{1} << main_bits) - 1;
    ExpectationResult res;
    for (basis_t x = 0; x < state.dim(); ++x) {
        const double w = std::norm(state.amps[x]);
        if (w == 0.0) continue;
        if ((x & ~main_mask) != 0) {  // ancilla bits not restored
            res.infeasible_mass += w;
            continue;
        }
        const auto cfg = enc.decode(x & main_mask);
        if (!cfg) {
            res.infeasible_mass += w;
            continue;
        }
        res.expectation += w * inst.objective(*cfg);
        if (!inst.is_feasible(*cfg)) res.infeasible_mass += w;
    }
    return res;
}

std::map<basis_t, int> sample(const AmplitudeVector& state, int shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
    std::vector<double> cumulative(state.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(state.amps[i]);
        cumulative[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, acc);
    std::map<basis_t, int> counts;
    for (int s = 0; s < shots; ++s) {
        const double u = uni(rng);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const basis_t idx = static_cast<basis_t>(it - cumulative.begin());
        counts[std::min<basis_t>(idx, state.dim() - 1)] += 1;
    }
    return counts;
}

double expectation_from_counts(const std::map<basis_t, int>& counts,
                               const ProblemInstance& inst, const Encoding& enc) {
    double acc = 0.0;
    long total = 0;
    for (const auto& [index, count] : counts) {
        const auto cfg = enc.decode(index);
        if (!cfg) continue;
        acc += count * inst.objective(*cfg);
        total += count;
    }
    return total ? acc / total : 0.0;
}

namespace {

bool schedule_less(const QaoaSchedule& a, const QaoaSchedule& b) {
    if (a.gammas != b.gammas) return a.gammas < b.gammas;
    return a.betas < b.betas;
}

struct Candidate {
    QaoaSchedule schedule;
    double value = 0.0;  // signed: larger is better
    bool valid = false;
};

void consider(Candidate& best, const QaoaSchedule& s, double value) {
    if (!best.valid || value > best.value ||
        (value == best.value && schedule_less(s, best.schedule))) {
        best.schedule = s;
        best.value = value;
        best.valid = true;
    }
}

}  // namespace

OptimizeResult optimize(const Circuit& circuit, const ProblemInstance& inst, const Encoding& enc,
                        const OptimizerConfig& config, std::uint64_t seed,
                        const std::vector<QaoaSchedule>& seed_points) {
    const int p = circuit.p;
    const double sign = inst.sense == Sense::Maximize ? 1.0 : -1.0;
    long evaluations = 0;

    auto evaluate = [&](const QaoaSchedule& s) -> double {
        const AmplitudeVector state = simulate(circuit, s);
        return sign * expectation(state, inst, enc).expectation;
    };

    Candidate best;
    for (const auto& s : seed_points) {
        if (s.p() != p || s.betas.size() != s.gammas.size())
            throw std::invalid_argument("optimize: seed point level mismatch");
        consider(best, s, evaluate(s));
        ++evaluations;
    }

    const int axes = 2 * p;
    auto axis_range = [&](int axis) -> std::pair<double, double> {
        return axis < p ? std::pair{config.gamma_lo, config.gamma_hi}
                        : std::pair{config.beta_lo, config.beta_hi};
    };
    auto to_schedule = [&](const std::vector<double>& x) {
        QaoaSchedule s;
        s.gammas.assign(x.begin(), x.begin() + p);
        s.betas.assign(x.begin() + p, x.end());
        return s;
    };

    switch (config.strategy) {
        case OptimizerConfig::Strategy::Grid: {
            const int n = config.grid_points;
            if (n < 1) throw std::invalid_argument("optimize: grid points must be >= 1");
            std::uint64_t total = 1;
            for (int a = 0; a < axes; ++a) {
                total *= static_cast<std::uint64_t>(n);
                if (total > 1'000'000ull)
                    throw std::invalid_argument("optimize: grid exceeds 10^6 points");
            }
            const int workers =
                static_cast<int>(std::min<std::uint64_t>(worker_count(), total));
            std::vector<Candidate> partial(workers);
            std::vector<long> evals(workers, 0);
            auto run_chunk = [&](int w) {
                for (std::uint64_t i = w; i < total; i += workers) {
                    std::vector<double> x(axes);
                    std::uint64_t rest = i;
                    for (int a = axes - 1; a >= 0; --a) {
                        const int step = static_cast<int>(rest % n);
                        rest /= n;
                        const auto [lo, hi] = axis_range(a);
                        x[a] = lo + (hi - lo) * step / n;
                    }
                    const QaoaSchedule s = to_schedule(x);
                    const AmplitudeVector state = simulate(circuit, s);
                    const double v = sign * expectation(state, inst, enc).expectation;
                    consider(partial[w], s, v);
                    ++evals[w];
                }
            };
            std::vector<std::thread> pool;
            for (int w = 1; w < workers; ++w) pool.emplace_back(run_chunk, w);
            run_chunk(0);
            for (auto& t : pool) t.join();
            for (int w = 0; w < workers; ++w) {
                if (partial[w].valid) consider(best, partial[w].schedule, partial[w].value);
                evaluations += evals[w];
            }
            break;
        }
        case OptimizerConfig::Strategy::CoordinateDescent: {
            std::mt19937_64 rng(derive_seed(seed, "coordinate-descent"));
            for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
                std::vector<double> x(axes);
                if (restart < static_cast<int>(seed_points.size())) {
                    const auto& s = seed_points[restart];
                    for (int a = 0; a < p; ++a) x[a] = s.gammas[a];
                    for (int a = 0; a < p; ++a) x[p + a] = s.betas[a];
                } else {
                    for (int a = 0; a < axes; ++a) {
                        const auto [lo, hi] = axis_range(a);
                        x[a] = lo + (hi - lo) * std::uniform_real_distribution<>(0, 1)(rng);
                    }
                }
                double cur = evaluate(to_schedule(x));
                ++evaluations;
                for (int it = 0; it < config.iterations; ++it) {
                    bool improved = false;
                    for (int a = 0; a < axes; ++a) {
                        const auto [lo, hi] = axis_range(a);
                        double span = hi - lo;
                        double center = x[a];
                        const int k = 16;
                        for (int refine = 0; refine < 3; ++refine) {
                            double best_v = cur, best_t = x[a];
                            for (int j = 0; j <= k; ++j) {
                                double t = center - span / 2 + span * j / k;
                                t = std::clamp(t, lo, hi);
                                if (t == x[a]) continue;
                                const double old = x[a];
                                x[a] = t;
                                const double v = evaluate(to_schedule(x));
                                ++evaluations;
                                x[a] = old;
                                if (v > best_v) {
                                    best_v = v;
                                    best_t = t;
                                }
                            }
                            if (best_v > cur) {
                                x[a] = best_t;
                                cur = best_v;
                                improved = true;
                            }
                            center = x[a];
                            span /= k / 2;
                        }
                    }
                    if (!improved) break;
                }
                consider(best, to_schedule(x), cur);
            }
            break;
        }
        case OptimizerConfig::Strategy::PatternSearch: {
            std::vector<double> x(axes);
            if (!seed_points.empty()) {
                const auto& s = seed_points.front();
                for (int a = 0; a < p; ++a) x[a] = s.gammas[a];
                for (int a = 0; a < p; ++a) x[p + a] = s.betas[a];
            } else {
                for (int a = 0; a < axes; ++a) {
                    const auto [lo, hi] = axis_range(a);
                    x[a] = lo + (hi - lo) / 2;
                }
            }
            std::vector<double> step(axes);
            for (int a = 0; a < axes; ++a) {
                const auto [lo, hi] = axis_range(a);
                step[a] = (hi - lo) / 8;
            }
            double cur = evaluate(to_schedule(x));
            ++evaluations;
            while (evaluations < config.budget) {
                bool improved = false;
                for (int a = 0; a < axes && evaluations < config.budget; ++a) {
                    const auto [lo, hi] = axis_range(a);
                    for (double dir : {+1.0, -1.0}) {
                        const double t = std::clamp(x[a] + dir * step[a], lo, hi);
                        if (t == x[a]) continue;
                        const double old = x[a];
                        x[a] = t;
                        const double v = evaluate(to_schedule(x));
                        ++evaluations;
                        if (v > cur) {
                            cur = v;
                            improved = true;
                            break;
                        }
                        x[a] = old;
                    }
                }
                if (!improved) {
                    double max_step = 0.0;
                    for (int a = 0; a < axes; ++a) {
                        step[a] /= 2;
                        max_step = std::max(max_step, step[a]);
                    }
                    if (max_step < 1e-6) break;
                }
            }
            consider(best, to_schedule(x), cur);
            break;
        }
    }

    OptimizeResult res;
    res.schedule = best.schedule;
    res.expectation = sign * best.value;
    res.evaluations = evaluations;
    return res;
}

std::optional<double> approximation_ratio(double expectation_value, const ProblemInstance& inst) {
    const BruteForceResult opt = brute_force_optimum(inst);
    if (opt.optimum == 0.0) return std::nullopt;
    if (inst.sense == Sense::Maximize) return expectation_value / opt.optimum;
    if (expectation_value == 0.0) return std::nullopt;
    return opt.optimum / expectation_value;
}

}  // namespace qaoakit
