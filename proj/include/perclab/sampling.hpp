#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perclab/bitvec.hpp"
#include "perclab/ladder_window.hpp"
#include "perclab/params.hpp"
#include "perclab/rng.hpp"

namespace perclab {

// One independent Bernoulli bit per edge, probability by class. The uniforms
// are a pure function of (seed, edge index), so two calls with comparable
// parameter sets and the same seed are coupled through shared uniforms:
// raising p or any q_i can only turn bits on.
BitVec sample_configuration(const LadderWindow& window, const EdgeClassMap& classes,
                            const ParamSet& params, std::uint64_t seed);

// Explicit shared-uniform route for per-sample monotonicity checks.
std::vector<double> draw_edge_uniforms(int edge_count, std::uint64_t seed);
BitVec threshold_uniforms(const std::vector<double>& uniforms, const EdgeClassMap& classes,
                          const ParamSet& params);

// Replay format: window fingerprint + hex bit string.
std::string dump_configuration(const LadderWindow& window, const BitVec& bits);
BitVec load_configuration(const LadderWindow& window, const std::string& dump);

}  // namespace perclab
