#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perclab/base_graph.hpp"

namespace perclab {

enum class Orientation { unoriented, oriented };

// Edge kinds per orientation. Unoriented levels carry in-layer copies of base
// edges plus rungs to the next level; oriented transitions carry both upward
// diagonals of each base edge (no vertical self-edges).
enum class EdgeKind : std::uint8_t {
    horizontal = 0,  // {(u,n),(v,n)}                unoriented
    vertical = 1,    // {(u,n),(u,n+1)}              unoriented
    diag_fwd = 2,    // <(u,n),(v,n+1)>, u < v       oriented
    diag_rev = 3,    // <(v,n),(u,n+1)>, u < v       oriented
};

struct EdgeRef {
    int level;      // layer n (horizontal) or transition n -> n+1 (others)
    EdgeKind kind;
    int item;       // base edge id (horizontal/diagonal) or base vertex id (vertical)

    bool operator==(const EdgeRef&) const = default;
};

// Finite truncation of the ladder over levels [level_min, level_max], free
// boundary (edges leaving the window simply do not exist). Edge indices are
// dense and ordered by (level, kind, base id), so runs replay bit-for-bit.
class LadderWindow {
public:
    LadderWindow(BaseGraph base, Orientation orientation, int level_min, int level_max);

    const BaseGraph& base() const { return base_; }
    Orientation orientation() const { return orient_; }
    bool oriented() const { return orient_ == Orientation::oriented; }
    int level_min() const { return level_min_; }
    int level_max() const { return level_max_; }
    int level_count() const { return level_max_ - level_min_ + 1; }

    int vertex_count() const { return base_.vertex_count * level_count(); }
    int vertex_id(int base_vertex, int level) const {
        return (level - level_min_) * base_.vertex_count + base_vertex;
    }
    std::pair<int, int> vertex_of(int id) const {
        return {id % base_.vertex_count, level_min_ + id / base_.vertex_count};
    }

    int edge_count() const { return edge_count_; }
    EdgeRef edge_ref(int index) const;
    int edge_index(const EdgeRef& ref) const;
    // Window vertex ids; for oriented edges the pair is (tail, head).
    std::pair<int, int> edge_endpoints(int index) const;

    // Structural fingerprint used to pair configuration dumps with windows.
    std::uint64_t structure_hash() const;

private:
    BaseGraph base_;
    Orientation orient_;
    int level_min_, level_max_;
    int stride_;       // edges per full level block
    int edge_count_;
};

inline LadderWindow build_ladder(BaseGraph base, Orientation orientation, int level_min,
                                 int level_max) {
    return LadderWindow(std::move(base), orientation, level_min, level_max);
}

// Per-edge class labels. Class 0 is bulk; classes 1..K are the level copies of
// distinguished base edges; classes K+1..K+L (unoriented only) are the rungs
// above and below distinguished base vertices.
struct EdgeClassMap {
    int class_edge_count = 0;    // K
    int class_vertex_count = 0;  // L
    std::vector<std::pair<int, int>> distinguished_edges;
    std::vector<int> distinguished_vertices;
    std::vector<std::uint16_t> class_of;  // per window edge index

    int class_count() const { return class_edge_count + class_vertex_count; }
};

EdgeClassMap classify_edges(const LadderWindow& window,
                            const std::vector<std::pair<int, int>>& distinguished_edges,
                            const std::vector<int>& distinguished_vertices);

}  // namespace perclab
