#pragma once

#include <cstdint>
#include <vector>

#include "perclab/anchor_config.hpp"
#include "perclab/block_geometry.hpp"
#include "perclab/coupling.hpp"
#include "perclab/ladder_window.hpp"

namespace perclab {

// Joint sampler for one block: the first configuration follows the (q, p)
// law on the block, the second follows (q', p+eps), and every draw keeps the
// boundary-cluster map of the first inside that of the second. Feasibility is
// decided once at construction from exact excess sums.
class BlockCoupler {
public:
    static BlockCoupler make(const BlockGeometry& block, const std::vector<double>& q_first,
                             const std::vector<double>& q_second, double p, double eps,
                             std::uint64_t max_profiles = 1ULL << 22);

    struct Sample {
        BitVec first, second;  // over block->all_edges
        CouplingCase tag;
    };
    Sample draw(Rng& rng) const;

    bool oriented() const { return oriented_; }
    const BlockSlotSpace& space() const { return space_; }
    const SingleAnchorCheck& single_check() const { return single_check_; }
    const PartitionedCheck& partitioned_check() const { return partitioned_check_; }
    const UnorientedBlockAnchor& anchor() const { return anchor_; }
    const OrientedBlockAnchors& oriented_anchors() const { return oriented_anchors_; }

private:
    BlockCoupler(const BlockGeometry& block, const std::vector<double>& q_first,
                 const std::vector<double>& q_second, double p, double eps,
                 std::uint64_t max_profiles);

    bool oriented_ = false;
    BlockSlotSpace space_;
    ProductMeasurePair measures_;
    UnorientedBlockAnchor anchor_;            // unoriented mode
    OrientedBlockAnchors oriented_anchors_;   // oriented mode
    BitVec anchor_element_;                   // assembled single anchor
    BitVec cut_element_, open_element_;       // assembled partitioned anchors
    SingleAnchorCheck single_check_;
    PartitionedCheck partitioned_check_;
};

// Independent exterior coupling: the first configuration opens each listed
// edge with probability p; the second is its disjunction with an independent
// eps/(1-p) sprinkling, hence Bernoulli(p+eps) and never below the first.
void couple_exterior_edges(const std::vector<int>& edges, double p, double eps, Rng& rng,
                           BitVec& first, BitVec& second);

// Full-window coupling: independent per-block couplings plus the exterior.
// Top-layer class copies outside every block (unoriented windows) are drawn
// independently with their exact class marginals; they cannot affect
// bottom-to-top reach events.
struct WindowCoupleResult {
    BitVec first, second;                // window configurations
    std::vector<CouplingCase> block_tags;
};

WindowCoupleResult couple_window(const BlockGeometry& block, const BlockCoupler& coupler,
                                 const std::vector<double>& q_first,
                                 const std::vector<double>& q_second, double p, double eps,
                                 std::uint64_t seed);

}  // namespace perclab
