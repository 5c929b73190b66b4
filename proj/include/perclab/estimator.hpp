#pragma once

#include <cstdint>
#include <vector>

#include "perclab/connectivity.hpp"
#include "perclab/ladder_window.hpp"
#include "perclab/params.hpp"

namespace perclab {

struct Estimate {
    double value = 0.0;
    double stderr_value = 0.0;  // sqrt(value (1-value) / replicas)
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
};

// Frequency of the reach event over independent replicas. Replica i draws its
// configuration from the stream derived as (seed, i); counts are integers, so
// the result does not depend on the number of worker threads.
Estimate estimate_reach(const LadderWindow& window, const EdgeClassMap& classes,
                        const ParamSet& params, const ReachQuery& query, std::uint64_t replicas,
                        std::uint64_t seed, int threads = 0);

// Success count over the replica index range [begin, end); building block for
// estimates that extend their replica pool deterministically.
std::uint64_t count_reach_successes(const LadderWindow& window, const EdgeClassMap& classes,
                                    const ParamSet& params, const ReachQuery& query,
                                    std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
                                    int threads = 0);

struct PcOptions {
    double tolerance = 0.01;          // final bracket width in p
    std::uint64_t replicas = 10000;   // per bisection point
    int max_replica_doublings = 3;    // statistical-tie handling
    double tie_z = 1.96;              // |value - 1/2| below tie_z stderr doubles the pool
    int threads = 0;
};

struct CriticalCurvePoint {
    std::vector<double> q;
    double pc_hat = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // final bisection bracket
    int width = 0;                    // base graph size
    int levels = 0;                   // window top level
    std::uint64_t replicas_used = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
};

// Bisection on p against the reach-probability-1/2 crossing at fixed q.
// Ends when the bracket is narrower than the tolerance; statistical ties at a
// midpoint enlarge that midpoint's replica pool up to the configured factor.
CriticalCurvePoint estimate_pc(const LadderWindow& window, const EdgeClassMap& classes,
                               const std::vector<double>& q, const ReachQuery& query,
                               const PcOptions& options, std::uint64_t seed);

struct SweepResult {
    std::vector<CriticalCurvePoint> points;
    double max_adjacent_jump = 0.0;  // continuity diagnostic
};

SweepResult sweep_q(const LadderWindow& window, const EdgeClassMap& classes,
                    const std::vector<std::vector<double>>& q_grid, const ReachQuery& query,
                    const PcOptions& options, std::uint64_t seed);

}  // namespace perclab
