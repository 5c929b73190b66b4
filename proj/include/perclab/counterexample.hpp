#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perclab/anchor_config.hpp"
#include "perclab/bitvec.hpp"
#include "perclab/block_geometry.hpp"

namespace perclab {

// A witness that a single deterministic configuration cannot play both anchor
// roles on an oriented block: some block configuration, some singleton
// boundary source, and a boundary vertex separating the two reach sets.
struct CounterexampleWitness {
    BitVec block_config;      // over block->all_edges
    int source_position;      // index into the lower/all boundary list
    int separating_position;  // index into the upper/all boundary list
};

struct CounterexampleReport {
    // Direction 1: a configuration whose reach escapes the cut anchor under a
    // fully open boundary (requires the cut anchor to close some edge).
    std::optional<CounterexampleWitness> escapes_cut_full;
    // Direction 2: the open anchor under a closed boundary reaches something a
    // configuration misses (the open anchor opens every class edge).
    std::optional<CounterexampleWitness> beats_candidate;
    std::uint64_t configs_tried = 0;
    bool exhaustive = false;
};

struct CounterexampleBudget {
    std::uint64_t random_configs = 200000;
    // Exhaustive sweep over all edge subsets when the block is small enough.
    int exhaustive_max_edges = 20;
};

CounterexampleReport search_counterexample_oriented(const BlockSlotSpace& space,
                                                    const OrientedBlockAnchors& anchors,
                                                    const CounterexampleBudget& budget,
                                                    std::uint64_t seed);

// Same two searches phrased against the unoriented anchor. Expected to come
// back empty: with the boundary open the anchor connects the whole block
// boundary, and the closed-boundary reach of any source is just itself.
CounterexampleReport search_counterexample_unoriented(const BlockSlotSpace& space,
                                                      const UnorientedBlockAnchor& anchor,
                                                      const CounterexampleBudget& budget,
                                                      std::uint64_t seed);

}  // namespace perclab
