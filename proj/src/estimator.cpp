#include "perclab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "perclab/errors.hpp"
#include "perclab/rng.hpp"

namespace perclab {

std::uint64_t count_reach_successes(const LadderWindow& window, const EdgeClassMap& classes,
                                    const ParamSet& params, const ReachQuery& query,
                                    std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
                                    int threads) {
    params.validate(classes.class_count());
    if (end < begin) throw ValidationError("empty replica range");
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = static_cast<int>(std::clamp(hw, 1u, 8u));
    }
    const int m = window.edge_count();
    std::vector<double> open_p(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e)
        open_p[static_cast<std::size_t>(e)] =
            params.edge_probability(classes.class_of[static_cast<std::size_t>(e)]);

    const std::uint64_t n = end - begin;
    const int workers = static_cast<int>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(workers), 0);
    auto run = [&](int w) {
        ReachEvaluator evaluator(window, query);
        BitVec cfg(m);
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin + static_cast<std::uint64_t>(w); i < end;
             i += static_cast<std::uint64_t>(workers)) {
            Rng rng(derive_stream_seed(seed, i));
            for (int e = 0; e < m; ++e)
                cfg.set(e, rng.uniform() < open_p[static_cast<std::size_t>(e)]);
            if (evaluator.evaluate(cfg)) ++hits;
        }
        tally[static_cast<std::size_t>(w)] = hits;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::uint64_t total = 0;
    for (auto h : tally) total += h;
    return total;
}

Estimate estimate_reach(const LadderWindow& window, const EdgeClassMap& classes,
                        const ParamSet& params, const ReachQuery& query, std::uint64_t replicas,
                        std::uint64_t seed, int threads) {
    if (replicas < 1) throw ValidationError("need at least one replica");
    const std::uint64_t hits =
        count_reach_successes(window, classes, params, query, 0, replicas, seed, threads);
    Estimate est;
    est.replicas = replicas;
    est.seed = seed;
    est.value = static_cast<double>(hits) / static_cast<double>(replicas);
    est.stderr_value = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(replicas));
    return est;
}

namespace {

// Estimate at one p, growing the replica pool while the result is a
// statistical tie with 1/2.
Estimate estimate_with_ties(const LadderWindow& window, const EdgeClassMap& classes,
                            ParamSet params, double p, const ReachQuery& query,
                            const PcOptions& options, std::uint64_t point_seed) {
    params.p = p;
    std::uint64_t replicas = options.replicas;
    std::uint64_t hits =
        count_reach_successes(window, classes, params, query, 0, replicas, point_seed,
                              options.threads);
    for (int d = 0; d < options.max_replica_doublings; ++d) {
        const double value = static_cast<double>(hits) / static_cast<double>(replicas);
        const double se = std::sqrt(std::max(value * (1.0 - value), 1e-12) /
                                    static_cast<double>(replicas));
        if (std::abs(value - 0.5) >= options.tie_z * se) break;
        hits += count_reach_successes(window, classes, params, query, replicas, 2 * replicas,
                                      point_seed, options.threads);
        replicas *= 2;
    }
    Estimate est;
    est.replicas = replicas;
    est.seed = point_seed;
    est.value = static_cast<double>(hits) / static_cast<double>(replicas);
    est.stderr_value = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(replicas));
    return est;
}

}  // namespace

CriticalCurvePoint estimate_pc(const LadderWindow& window, const EdgeClassMap& classes,
                               const std::vector<double>& q, const ReachQuery& query,
                               const PcOptions& options, std::uint64_t seed) {
    if (!(options.tolerance > 0.0 && options.tolerance < 1.0))
        throw ValidationError("tolerance must lie in (0,1)");
    ParamSet params;
    params.q = q;
    params.validate(classes.class_count());

    CriticalCurvePoint point;
    point.q = q;
    point.width = window.base().vertex_count;
    point.levels = window.level_max();
    point.seed = seed;

    // Bracket check at the endpoints with a reduced pool.
    const std::uint64_t probe = std::max<std::uint64_t>(options.replicas / 8, 200);
    {
        ParamSet lo = params, hi = params;
        lo.p = 0.0;
        hi.p = 1.0;
        const auto at0 = count_reach_successes(window, classes, lo, query, 0, probe,
                                               derive_stream_seed(seed, 900001), options.threads);
        const auto at1 = count_reach_successes(window, classes, hi, query, 0, probe,
                                               derive_stream_seed(seed, 900002), options.threads);
        const double f0 = static_cast<double>(at0) / static_cast<double>(probe);
        const double f1 = static_cast<double>(at1) / static_cast<double>(probe);
        if (!(f0 < 0.5 && f1 > 0.5))
            throw ValidationError("reach probability does not bracket 1/2 over p in [0,1] "
                                  "(endpoints " +
                                  std::to_string(f0) + ", " + std::to_string(f1) + ")");
        point.replicas_used += 2 * probe;
    }

    double lo = 0.0, hi = 1.0;
    int iter = 0;
    while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const Estimate est = estimate_with_ties(window, classes, params, mid, query, options,
                                                derive_stream_seed(seed, 1000 + iter));
        point.replicas_used += est.replicas;
        if (est.value < 0.5)
            lo = mid;
        else
            hi = mid;
        ++iter;
    }
    point.iterations = iter;
    point.ci_lo = lo;
    point.ci_hi = hi;
    point.pc_hat = 0.5 * (lo + hi);
    return point;
}

SweepResult sweep_q(const LadderWindow& window, const EdgeClassMap& classes,
                    const std::vector<std::vector<double>>& q_grid, const ReachQuery& query,
                    const PcOptions& options, std::uint64_t seed) {
    if (q_grid.empty()) throw ValidationError("empty q grid");
    SweepResult result;
    for (std::size_t g = 0; g < q_grid.size(); ++g)
        result.points.push_back(estimate_pc(window, classes, q_grid[g], query, options,
                                            derive_stream_seed(seed, 5000 + g)));
    for (std::size_t g = 1; g < result.points.size(); ++g)
        result.max_adjacent_jump =
            std::max(result.max_adjacent_jump,
                     std::abs(result.points[g].pc_hat - result.points[g - 1].pc_hat));
    return result;
}

}  // namespace perclab
