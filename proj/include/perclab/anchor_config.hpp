#pragma once

#include <vector>

#include "perclab/bitvec.hpp"
#include "perclab/block_geometry.hpp"
#include "perclab/measure.hpp"

namespace perclab {

// Coordinate layout of the block coupling space: one slot per class edge of
// block 0 (grouped by class, with the oriented middle-transition copies split
// into their own pinned group), then two independent copies of the boundary
// edges. The second boundary copy supplies the extra randomness that turns a
// p-layer into a (p+eps)-layer by disjunction.
struct BlockSlotSpace {
    const BlockGeometry* block = nullptr;

    std::vector<int> class_slot_edge;      // window edge id per class slot
    std::vector<int> class_slot_class;     // class id per class slot
    std::vector<char> class_slot_middle;   // 1 when on the middle transition (oriented)
    std::vector<int> class_slot_blockpos;  // position in block->all_edges
    std::vector<int> boundary_blockpos;    // per boundary edge, position in block->all_edges

    int class_slots() const { return static_cast<int>(class_slot_edge.size()); }
    int boundary_slots() const { return static_cast<int>(boundary_blockpos.size()); }
    int total_slots() const { return class_slots() + 2 * boundary_slots(); }

    // Product measures on the space: class slots carry q (first) vs q'
    // (second); both boundary copies carry identical probabilities p and
    // eps/(1-p), so only class groups can differ.
    ProductMeasurePair measures(const std::vector<double>& q_first,
                                const std::vector<double>& q_second, double p, double eps) const;

    BitVec assemble(const BitVec& class_bits, bool boundary1_open, bool boundary2_open) const;

    // Project an element of the space to a block configuration over
    // block->all_edges: class slots pass through; the boundary layer is the
    // first copy, or the disjunction of both copies when merge_boost is set.
    BitVec block_config(const BitVec& element, bool merge_boost) const;
};

BlockSlotSpace make_block_slot_space(const BlockGeometry& block);

// Unoriented deterministic anchor: vertical stubs whose height follows the
// distance-to-outside order, their escape paths copied at matching heights,
// and a fully open middle layer. With the boundary closed it keeps every
// boundary set to itself; with the boundary open it connects the entire
// block boundary. Both identities are verified exhaustively at build time.
struct UnorientedBlockAnchor {
    BitVec class_bits;                            // interior part, over class slots
    std::vector<int> vertex_order;                // ball vertices, closest-to-outside first
    std::vector<std::vector<int>> escape_paths;   // per ordered vertex: base edge ids
};

UnorientedBlockAnchor build_unoriented_anchor(const BlockSlotSpace& space);

// Oriented anchor pair: the cut anchor opens every class edge except the two
// middle-transition copies of each class; the open anchor opens all of them.
// Build verifies that the open anchor under a closed boundary reaches no more
// than the cut anchor under a fully open boundary, for every singleton source
// (hence every boundary subset).
struct OrientedBlockAnchors {
    BitVec cut_class_bits;
    BitVec open_class_bits;
    std::vector<int> middle_slots;
};

OrientedBlockAnchors build_oriented_anchors(const BlockSlotSpace& space);

}  // namespace perclab
