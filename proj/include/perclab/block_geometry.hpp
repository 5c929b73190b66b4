#pragma once

#include <vector>

#include "perclab/ladder_window.hpp"

namespace perclab {

// Decomposition of an aligned window into translated copies of one block.
// The block is the box over the ball of radius r+1 around `center`, spanning
// `height` levels, where height = 2L+2 (unoriented, L = |ball|) or 2K+2
// (oriented, K = edges inside the ball). Distinguished classes must be
// exactly the ball's edges and (unoriented) vertices.
//
// Block edge sets are pairwise disjoint; together with the exterior edges
// they partition the window edge set. In the unoriented case the in-layer
// copies at each block's top level belong to the block above, so the very
// top layer of the window (which has no block above) lands in the exterior;
// the class edges among those are tracked separately since they keep their
// class marginals.
struct BlockGeometry {
    const LadderWindow* window = nullptr;
    const EdgeClassMap* classes = nullptr;

    int center = 0;
    int radius = 0;
    int height = 0;
    int block_count = 0;

    std::vector<int> ball;          // U, ascending base vertex ids
    std::vector<int> ball_outer;    // ball of radius r+1
    std::vector<int> wall_vertices; // distance exactly r+1

    // Block 0 (levels 0..height), window edge indices in ascending order.
    std::vector<int> class_edges;     // distinguished-class members of the block
    std::vector<int> boundary_edges;  // remaining block edges
    std::vector<int> all_edges;       // class_edges ∪ boundary_edges, sorted

    // Window edges in no block.
    std::vector<int> exterior_bulk_edges;
    std::vector<int> exterior_class_edges;  // top-layer class copies (unoriented only)

    // Local vertex structure of block 0: ball_outer columns x levels 0..height.
    // local id = level * |ball_outer| + column position.
    std::vector<int> local_vertex_window_id;          // per local id
    std::vector<std::pair<int, int>> edge_local_ends; // per all_edges entry; oriented: (tail, head)

    // Boundary vertex sets of block 0, as sorted local ids. Subset positions
    // index into these lists.
    std::vector<int> boundary_all;    // walls + floor + ceiling (unoriented)
    std::vector<int> boundary_lower;  // walls + floor (oriented)
    std::vector<int> boundary_upper;  // walls + ceiling (oriented)

    int edge_shift_per_block = 0;  // index stride between consecutive blocks
    int local_vertex_count() const { return static_cast<int>(local_vertex_window_id.size()); }
    int block_edge_count() const { return static_cast<int>(all_edges.size()); }

    int translate_edge(int block0_edge_index, int block) const {
        return block0_edge_index + block * edge_shift_per_block;
    }
};

BlockGeometry build_block_geometry(const LadderWindow& window, const EdgeClassMap& classes,
                                   int center, int radius);

}  // namespace perclab
