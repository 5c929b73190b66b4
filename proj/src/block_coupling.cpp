#include "perclab/block_coupling.hpp"

#include "perclab/errors.hpp"

namespace perclab {

BlockCoupler::BlockCoupler(const BlockGeometry& block, const std::vector<double>& q_first,
                           const std::vector<double>& q_second, double p, double eps,
                           std::uint64_t max_profiles)
    : oriented_(block.window->oriented()),
      space_(make_block_slot_space(block)),
      measures_(space_.measures(q_first, q_second, p, eps)) {
    if (oriented_) {
        oriented_anchors_ = build_oriented_anchors(space_);
        cut_element_ = space_.assemble(oriented_anchors_.cut_class_bits, false, true);
        open_element_ = space_.assemble(oriented_anchors_.open_class_bits, false, true);
        partitioned_check_ =
            partitioned_feasibility(measures_, cut_element_, open_element_, max_profiles);
        if (!partitioned_check_.feasible)
            throw InfeasibleCouplingError(
                "oriented block coupling infeasible at these parameters: open-part excess " +
                std::to_string(partitioned_check_.excess_first_open) + " vs anchor mass " +
                std::to_string(partitioned_check_.open_anchor_mass_second));
    } else {
        anchor_ = build_unoriented_anchor(space_);
        anchor_element_ = space_.assemble(anchor_.class_bits, false, true);
        single_check_ = single_anchor_feasibility(measures_, anchor_element_, max_profiles);
        if (!single_check_.feasible)
            throw InfeasibleCouplingError(
                "unoriented block coupling infeasible at these parameters: excesses " +
                std::to_string(single_check_.excess_first) + "/" +
                std::to_string(single_check_.excess_second) + " vs anchor masses " +
                std::to_string(single_check_.anchor_mass_second) + "/" +
                std::to_string(single_check_.anchor_mass_first));
    }
}

BlockCoupler BlockCoupler::make(const BlockGeometry& block, const std::vector<double>& q_first,
                                const std::vector<double>& q_second, double p, double eps,
                                std::uint64_t max_profiles) {
    return BlockCoupler(block, q_first, q_second, p, eps, max_profiles);
}

BlockCoupler::Sample BlockCoupler::draw(Rng& rng) const {
    ProductOutcome outcome =
        oriented_ ? couple_partitioned_product(measures_, cut_element_, open_element_,
                                               partitioned_check_, rng)
                  : couple_single_anchor_product(measures_, anchor_element_, single_check_, rng);
    Sample s;
    s.first = space_.block_config(outcome.first, false);
    s.second = space_.block_config(outcome.second, true);
    s.tag = outcome.tag;
    return s;
}

void couple_exterior_edges(const std::vector<int>& edges, double p, double eps, Rng& rng,
                           BitVec& first, BitVec& second) {
    if (!(eps > 0.0 && eps < 1.0 - p)) throw ValidationError("epsilon must lie in (0, 1-p)");
    const double boost = eps / (1.0 - p);
    for (int e : edges) {
        const bool z1 = rng.uniform() < p;
        const bool z2 = rng.uniform() < boost;
        first.set(e, z1);
        second.set(e, z1 || z2);
    }
}

WindowCoupleResult couple_window(const BlockGeometry& block, const BlockCoupler& coupler,
                                 const std::vector<double>& q_first,
                                 const std::vector<double>& q_second, double p, double eps,
                                 std::uint64_t seed) {
    const LadderWindow& window = *block.window;
    const EdgeClassMap& classes = *block.classes;
    WindowCoupleResult out;
    out.first = BitVec(window.edge_count());
    out.second = BitVec(window.edge_count());
    for (int b = 0; b < block.block_count; ++b) {
        Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(b)));
        const auto sample = coupler.draw(rng);
        out.block_tags.push_back(sample.tag);
        for (std::size_t k = 0; k < block.all_edges.size(); ++k) {
            const int e = block.translate_edge(block.all_edges[k], b);
            out.first.set(e, sample.first.get(static_cast<int>(k)));
            out.second.set(e, sample.second.get(static_cast<int>(k)));
        }
    }
    {
        Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(block.block_count)));
        couple_exterior_edges(block.exterior_bulk_edges, p, eps, rng, out.first, out.second);
    }
    if (!block.exterior_class_edges.empty()) {
        Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(block.block_count) + 1));
        for (int e : block.exterior_class_edges) {
            const int c = classes.class_of[static_cast<std::size_t>(e)];
            out.first.set(e, rng.uniform() < q_first[static_cast<std::size_t>(c - 1)]);
            out.second.set(e, rng.uniform() < q_second[static_cast<std::size_t>(c - 1)]);
        }
    }
    return out;
}

}  // namespace perclab
