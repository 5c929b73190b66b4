#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perclab/bitvec.hpp"
#include "perclab/block_geometry.hpp"
#include "perclab/ladder_window.hpp"

namespace perclab {

// Connected components of the open subgraph; unoriented windows only.
// Returns one component id per window vertex.
std::vector<int> clusters(const LadderWindow& window, const BitVec& config);

// Vertices reachable from origin along open edges with nondecreasing level;
// oriented windows only. Sorted window vertex ids.
std::vector<int> forward_cluster(const LadderWindow& window, const BitVec& config, int origin);

struct ReachQuery {
    std::vector<int> sources;              // window vertex ids, nonempty
    std::vector<int> target_vertices;      // explicit targets, may be empty
    std::optional<int> target_level;       // alternative: reach any vertex at this level
};

// Full bottom layer to the top layer; the standard crossing event.
ReachQuery make_crossing_query(const LadderWindow& window);
// Origin columns at the bottom layer; targets are the top layer plus,
// optionally, the lateral wall columns of the window.
ReachQuery make_origin_query(const LadderWindow& window, const std::vector<int>& origin_columns,
                             bool include_lateral);

bool reach_indicator(const LadderWindow& window, const BitVec& config, const ReachQuery& query);

// Reusable evaluator for hot Monte Carlo loops: buffers allocated once.
class ReachEvaluator {
public:
    ReachEvaluator(const LadderWindow& window, ReachQuery query);
    bool evaluate(const BitVec& config);

private:
    bool evaluate_unoriented(const BitVec& config);
    bool evaluate_oriented(const BitVec& config);

    const LadderWindow& window_;
    ReachQuery query_;
    std::vector<char> is_target_;
    std::vector<int> parent_;                       // union-find workspace
    std::vector<std::pair<int, int>> endpoints_;    // per edge
    std::vector<char> frontier_, next_;             // oriented sweep workspace
};

// Boundary subsets are bitmasks over the block's boundary vertex list
// (boundary_all when unoriented, boundary_lower when oriented).
// Returns the mask of boundary vertices (same list when unoriented,
// boundary_upper when oriented) reachable from the subset inside the block.
std::uint64_t boundary_cluster(const BlockGeometry& block, const BitVec& block_bits,
                               std::uint64_t subset_mask);

// Precomputed per-singleton reach sets let callers test containment for every
// boundary subset at once: reach(A) is the union of reach over singletons.
class BoundaryReach {
public:
    explicit BoundaryReach(const BlockGeometry& block);
    // One result mask per source boundary vertex.
    std::vector<std::uint64_t> singleton_reach(const BitVec& block_bits);

private:
    const BlockGeometry& block_;
    std::vector<int> parent_;
    std::vector<char> reached_;
    std::vector<int> out_pos_;  // local vertex id -> position in the result list, or -1
};

}  // namespace perclab
