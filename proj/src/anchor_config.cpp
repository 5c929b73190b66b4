#include "perclab/anchor_config.hpp"

#include <algorithm>
#include <string>

#include "perclab/connectivity.hpp"
#include "perclab/errors.hpp"

namespace perclab {

ProductMeasurePair BlockSlotSpace::measures(const std::vector<double>& q_first,
                                            const std::vector<double>& q_second, double p,
                                            double eps) const {
    const int n_classes = block->classes->class_count();
    if (static_cast<int>(q_first.size()) != n_classes ||
        static_cast<int>(q_second.size()) != n_classes)
        throw ValidationError("class probability vectors do not match the class count");
    if (!(eps > 0.0 && eps < 1.0 - p)) throw ValidationError("epsilon must lie in (0, 1-p)");
    std::vector<SlotGroup> groups;
    // Slot order is group-major: per class its free slots then its middle
    // slots, then the two boundary copies. Emit groups in the same order.
    int i = 0;
    while (i < class_slots()) {
        const int c = class_slot_class[static_cast<std::size_t>(i)];
        const bool middle = class_slot_middle[static_cast<std::size_t>(i)] != 0;
        int j = i;
        while (j < class_slots() && class_slot_class[static_cast<std::size_t>(j)] == c &&
               (class_slot_middle[static_cast<std::size_t>(j)] != 0) == middle)
            ++j;
        groups.push_back({j - i, q_first[static_cast<std::size_t>(c - 1)],
                          q_second[static_cast<std::size_t>(c - 1)], middle});
        i = j;
    }
    groups.push_back({boundary_slots(), p, p, false});
    groups.push_back({boundary_slots(), eps / (1.0 - p), eps / (1.0 - p), false});
    return ProductMeasurePair(std::move(groups));
}

BitVec BlockSlotSpace::assemble(const BitVec& class_bits, bool boundary1_open,
                                bool boundary2_open) const {
    if (class_bits.size() != class_slots()) throw ValidationError("class slot count mismatch");
    BitVec e(total_slots());
    for (int i = 0; i < class_slots(); ++i) e.set(i, class_bits.get(i));
    for (int k = 0; k < boundary_slots(); ++k) {
        e.set(class_slots() + k, boundary1_open);
        e.set(class_slots() + boundary_slots() + k, boundary2_open);
    }
    return e;
}

BitVec BlockSlotSpace::block_config(const BitVec& element, bool merge_boost) const {
    if (element.size() != total_slots()) throw ValidationError("element slot count mismatch");
    BitVec cfg(block->block_edge_count());
    for (int i = 0; i < class_slots(); ++i)
        cfg.set(class_slot_blockpos[static_cast<std::size_t>(i)], element.get(i));
    for (int k = 0; k < boundary_slots(); ++k) {
        bool open = element.get(class_slots() + k);
        if (merge_boost) open = open || element.get(class_slots() + boundary_slots() + k);
        cfg.set(boundary_blockpos[static_cast<std::size_t>(k)], open);
    }
    return cfg;
}

BlockSlotSpace make_block_slot_space(const BlockGeometry& block) {
    BlockSlotSpace s;
    s.block = &block;
    const LadderWindow& window = *block.window;
    const EdgeClassMap& classes = *block.classes;
    std::vector<int> block_pos(window.edge_count(), -1);
    for (std::size_t k = 0; k < block.all_edges.size(); ++k)
        block_pos[static_cast<std::size_t>(block.all_edges[k])] = static_cast<int>(k);

    const int middle_level = classes.class_edge_count;  // oriented middle transition
    struct SlotInfo {
        int cls;
        int middle;
        int edge;
    };
    std::vector<SlotInfo> slots;
    for (int e : block.class_edges) {
        const int c = classes.class_of[static_cast<std::size_t>(e)];
        const EdgeRef r = window.edge_ref(e);
        const bool mid = window.oriented() && r.level == middle_level;
        slots.push_back({c, mid ? 1 : 0, e});
    }
    std::sort(slots.begin(), slots.end(), [](const SlotInfo& a, const SlotInfo& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        if (a.middle != b.middle) return a.middle < b.middle;
        return a.edge < b.edge;
    });
    for (const auto& sl : slots) {
        s.class_slot_edge.push_back(sl.edge);
        s.class_slot_class.push_back(sl.cls);
        s.class_slot_middle.push_back(static_cast<char>(sl.middle));
        s.class_slot_blockpos.push_back(block_pos[static_cast<std::size_t>(sl.edge)]);
    }
    for (int e : block.boundary_edges)
        s.boundary_blockpos.push_back(block_pos[static_cast<std::size_t>(e)]);
    return s;
}

UnorientedBlockAnchor build_unoriented_anchor(const BlockSlotSpace& space) {
    const BlockGeometry& block = *space.block;
    const LadderWindow& window = *block.window;
    const BaseGraph& g = window.base();
    if (window.oriented())
        throw ValidationError("unoriented anchor requested on an oriented block");

    const int L = static_cast<int>(block.ball.size());
    const int height = block.height;  // 2L+2

    // Order ball vertices by distance to the outside, ties by id.
    std::vector<int> outside;
    {
        std::vector<char> in_ball(g.vertex_count, 0);
        for (int v : block.ball) in_ball[v] = 1;
        for (int v = 0; v < g.vertex_count; ++v)
            if (!in_ball[v]) outside.push_back(v);
    }
    const auto dist_out = distances_from_set(g, outside);
    UnorientedBlockAnchor anchor;
    anchor.vertex_order = block.ball;
    std::stable_sort(anchor.vertex_order.begin(), anchor.vertex_order.end(),
                     [&](int a, int b) { return dist_out[a] < dist_out[b]; });

    // Escape paths: lexicographically least shortest path, inside the ball,
    // from each ordered vertex to the ball's outer shell.
    const auto dist_center = distances_from(g, block.center);
    std::vector<char> in_ball(g.vertex_count, 0);
    for (int v : block.ball) in_ball[v] = 1;
    std::vector<int> shell;
    for (int v : block.ball)
        if (dist_center[v] == block.radius) shell.push_back(v);
    // BFS from the shell restricted to ball vertices.
    std::vector<int> dist_shell(g.vertex_count, -1);
    {
        std::vector<int> queue = shell;
        for (int v : shell) dist_shell[v] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (int v : g.adjacency[u])
                if (in_ball[v] && dist_shell[v] < 0) {
                    dist_shell[v] = dist_shell[u] + 1;
                    queue.push_back(v);
                }
        }
    }
    std::vector<int> rank_of(g.vertex_count, -1);
    for (int j = 0; j < L; ++j) rank_of[anchor.vertex_order[static_cast<std::size_t>(j)]] = j + 1;
    anchor.escape_paths.resize(L);
    // Per base edge and per height 1..height-1, whether the copy is open.
    std::vector<std::vector<char>> open_path_edge(
        static_cast<std::size_t>(g.edge_count()), std::vector<char>(height, 0));
    for (int j = 1; j <= L; ++j) {
        const int w = anchor.vertex_order[static_cast<std::size_t>(j - 1)];
        auto& path = anchor.escape_paths[static_cast<std::size_t>(j - 1)];
        int cur = w;
        while (dist_shell[cur] > 0) {
            int next = -1;
            for (int v : g.adjacency[cur])
                if (in_ball[v] && dist_shell[v] == dist_shell[cur] - 1) {
                    next = v;
                    break;  // adjacency is sorted, first hit is least id
                }
            if (next < 0) throw HardAssertionError("escape path search left the ball");
            const int eid = g.edge_id(cur, next);
            path.push_back(eid);
            open_path_edge[static_cast<std::size_t>(eid)][static_cast<std::size_t>(j)] = 1;
            open_path_edge[static_cast<std::size_t>(eid)][static_cast<std::size_t>(height - j)] = 1;
            cur = next;
        }
    }

    anchor.class_bits = BitVec(space.class_slots());
    for (int i = 0; i < space.class_slots(); ++i) {
        const EdgeRef r = window.edge_ref(space.class_slot_edge[static_cast<std::size_t>(i)]);
        bool open = false;
        if (r.kind == EdgeKind::horizontal) {
            open = r.level == L + 1 ||
                   open_path_edge[static_cast<std::size_t>(r.item)][static_cast<std::size_t>(r.level)];
        } else {  // vertical class edge over a ball vertex
            const int j = rank_of[r.item];
            open = r.level < j || r.level >= height - j;
        }
        anchor.class_bits.set(i, open);
    }

    // Verify both anchor identities over every singleton (and by additivity of
    // the boundary cluster map, over every boundary subset).
    BoundaryReach reach(block);
    const auto closed = reach.singleton_reach(
        space.block_config(space.assemble(anchor.class_bits, false, false), false));
    const auto full = reach.singleton_reach(
        space.block_config(space.assemble(anchor.class_bits, true, true), false));
    const std::uint64_t all_mask =
        block.boundary_all.size() == 64 ? ~0ULL : (1ULL << block.boundary_all.size()) - 1;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        if (closed[i] != (1ULL << i))
            throw HardAssertionError("anchor with closed boundary grows boundary vertex " +
                                     std::to_string(i));
        if (full[i] != all_mask)
            throw HardAssertionError("anchor with open boundary misses part of the boundary from vertex " +
                                     std::to_string(i));
    }
    return anchor;
}

OrientedBlockAnchors build_oriented_anchors(const BlockSlotSpace& space) {
    const BlockGeometry& block = *space.block;
    if (!block.window->oriented())
        throw ValidationError("oriented anchors requested on an unoriented block");
    OrientedBlockAnchors anchors;
    anchors.cut_class_bits = BitVec(space.class_slots(), true);
    anchors.open_class_bits = BitVec(space.class_slots(), true);
    for (int i = 0; i < space.class_slots(); ++i)
        if (space.class_slot_middle[static_cast<std::size_t>(i)]) {
            anchors.cut_class_bits.set(i, false);
            anchors.middle_slots.push_back(i);
        }
    if (anchors.middle_slots.empty())
        throw ValidationError("oriented block has no middle-transition class edges");

    BoundaryReach reach(block);
    const auto open_closed = reach.singleton_reach(
        space.block_config(space.assemble(anchors.open_class_bits, false, false), false));
    const auto cut_full = reach.singleton_reach(
        space.block_config(space.assemble(anchors.cut_class_bits, true, true), false));
    for (std::size_t i = 0; i < open_closed.size(); ++i)
        if (open_closed[i] & ~cut_full[i])
            throw HardAssertionError(
                "open anchor under closed boundary escapes the cut anchor's reach from vertex " +
                std::to_string(i));
    return anchors;
}

}  // namespace perclab
