#include "perclab/counterexample.hpp"

#include "perclab/connectivity.hpp"
#include "perclab/rng.hpp"

namespace perclab {

namespace {

// Runs both searches against the given reference reach sets.
//   reference_upper: per-singleton reach of the dominating configuration
//                    (candidate reach must stay inside it, direction 1)
//   reference_lower: per-singleton reach of the dominated configuration
//                    (candidate reach must cover it, direction 2)
CounterexampleReport run_search(const BlockGeometry& block,
                                const std::vector<std::uint64_t>& reference_upper,
                                const std::vector<std::uint64_t>& reference_lower,
                                const CounterexampleBudget& budget, std::uint64_t seed) {
    CounterexampleReport report;
    BoundaryReach reach(block);
    const int edges = block.block_edge_count();
    const bool exhaustive = edges <= budget.exhaustive_max_edges;
    report.exhaustive = exhaustive;
    const std::uint64_t total =
        exhaustive ? (1ULL << edges) : budget.random_configs;
    Rng rng(seed);
    BitVec cfg(edges);
    for (std::uint64_t it = 0; it < total; ++it) {
        if (exhaustive) {
            for (int e = 0; e < edges; ++e) cfg.set(e, (it >> e) & 1ULL);
        } else if (it == 0) {
            cfg.fill(false);  // all-closed candidate first, then random ones
        } else {
            for (int e = 0; e < edges; ++e) cfg.set(e, rng.uniform() < 0.5);
        }
        ++report.configs_tried;
        const auto masks = reach.singleton_reach(cfg);
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (!report.escapes_cut_full && (masks[i] & ~reference_upper[i])) {
                const std::uint64_t diff = masks[i] & ~reference_upper[i];
                report.escapes_cut_full = CounterexampleWitness{
                    cfg, static_cast<int>(i), __builtin_ctzll(diff)};
            }
            if (!report.beats_candidate && (reference_lower[i] & ~masks[i])) {
                const std::uint64_t diff = reference_lower[i] & ~masks[i];
                report.beats_candidate = CounterexampleWitness{
                    cfg, static_cast<int>(i), __builtin_ctzll(diff)};
            }
        }
        if (report.escapes_cut_full && report.beats_candidate && !exhaustive) break;
    }
    return report;
}

}  // namespace

CounterexampleReport search_counterexample_oriented(const BlockSlotSpace& space,
                                                    const OrientedBlockAnchors& anchors,
                                                    const CounterexampleBudget& budget,
                                                    std::uint64_t seed) {
    const BlockGeometry& block = *space.block;
    BoundaryReach reach(block);
    const auto cut_full = reach.singleton_reach(
        space.block_config(space.assemble(anchors.cut_class_bits, true, true), false));
    const auto open_closed = reach.singleton_reach(
        space.block_config(space.assemble(anchors.open_class_bits, false, false), false));
    return run_search(block, cut_full, open_closed, budget, seed);
}

CounterexampleReport search_counterexample_unoriented(const BlockSlotSpace& space,
                                                      const UnorientedBlockAnchor& anchor,
                                                      const CounterexampleBudget& budget,
                                                      std::uint64_t seed) {
    const BlockGeometry& block = *space.block;
    BoundaryReach reach(block);
    const auto anchor_full = reach.singleton_reach(
        space.block_config(space.assemble(anchor.class_bits, true, true), false));
    const auto anchor_closed = reach.singleton_reach(
        space.block_config(space.assemble(anchor.class_bits, false, false), false));
    return run_search(block, anchor_full, anchor_closed, budget, seed);
}

}  // namespace perclab
