#include "perclab/block_geometry.hpp"

#include <algorithm>
#include <string>

#include "perclab/errors.hpp"

namespace perclab {

namespace {

std::vector<int> sorted_ball(const BaseGraph& g, int center, int radius) {
    const auto dist = distances_from(g, center);
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count; ++v)
        if (dist[v] >= 0 && dist[v] <= radius) out.push_back(v);
    return out;
}

}  // namespace

BlockGeometry build_block_geometry(const LadderWindow& window, const EdgeClassMap& classes,
                                   int center, int radius) {
    const BaseGraph& g = window.base();
    if (center < 0 || center >= g.vertex_count)
        throw ValidationError("block center is not a base vertex");
    if (radius < 0) throw ValidationError("block radius must be nonnegative");

    BlockGeometry b;
    b.window = &window;
    b.classes = &classes;
    b.center = center;
    b.radius = radius;
    b.ball = sorted_ball(g, center, radius);
    b.ball_outer = sorted_ball(g, center, radius + 1);
    if (static_cast<int>(b.ball.size()) == g.vertex_count)
        throw ValidationError("ball of radius " + std::to_string(radius) +
                              " swallows the base graph; no boundary columns remain");
    {
        const auto dist = distances_from(g, center);
        for (int v : b.ball_outer)
            if (dist[v] == radius + 1) b.wall_vertices.push_back(v);
    }

    // The distinguished classes must be exactly the ball's edge set (and, when
    // unoriented, its vertex set), one class per item.
    std::vector<std::pair<int, int>> ball_edges;
    {
        std::vector<char> in_ball(g.vertex_count, 0);
        for (int v : b.ball) in_ball[v] = 1;
        for (auto [u, v] : g.edges)
            if (in_ball[u] && in_ball[v]) ball_edges.emplace_back(u, v);
    }
    auto de = classes.distinguished_edges;
    std::sort(de.begin(), de.end());
    if (de != ball_edges)
        throw ValidationError("distinguished edges differ from the ball's edge set");
    if (window.oriented()) {
        if (!classes.distinguished_vertices.empty())
            throw ValidationError("oriented blocks take no distinguished vertices");
    } else {
        auto dv = classes.distinguished_vertices;
        std::sort(dv.begin(), dv.end());
        if (dv != b.ball)
            throw ValidationError("distinguished vertices differ from the ball");
    }

    const int K = static_cast<int>(ball_edges.size());
    const int L = window.oriented() ? 0 : static_cast<int>(b.ball.size());
    b.height = window.oriented() ? 2 * K + 2 : 2 * L + 2;
    if (window.level_min() != 0)
        throw ValidationError("block decomposition requires the window to start at level 0");
    if (window.level_max() < b.height || window.level_max() % b.height != 0)
        throw ValidationError("window top level must be a positive multiple of the block height " +
                              std::to_string(b.height));
    b.block_count = window.level_max() / b.height;

    const int W = static_cast<int>(b.ball_outer.size());
    std::vector<int> outer_pos(g.vertex_count, -1);
    for (int i = 0; i < W; ++i) outer_pos[b.ball_outer[i]] = i;

    // Block 0 membership: an edge belongs to the block iff all endpoints lie in
    // the outer ball and within levels [0, height], excluding the unoriented
    // top-layer in-layer copies (those are the floor of the next block).
    std::vector<char> in_block(window.edge_count(), 0);
    for (int idx = 0; idx < window.edge_count(); ++idx) {
        const EdgeRef r = window.edge_ref(idx);
        bool member = false;
        switch (r.kind) {
            case EdgeKind::horizontal: {
                const auto [u, v] = g.edges[r.item];
                member = r.level >= 0 && r.level <= b.height - 1 && outer_pos[u] >= 0 &&
                         outer_pos[v] >= 0;
                break;
            }
            case EdgeKind::vertical:
                member = r.level >= 0 && r.level + 1 <= b.height && outer_pos[r.item] >= 0;
                break;
            case EdgeKind::diag_fwd:
            case EdgeKind::diag_rev: {
                const auto [u, v] = g.edges[r.item];
                member = r.level >= 0 && r.level + 1 <= b.height && outer_pos[u] >= 0 &&
                         outer_pos[v] >= 0;
                break;
            }
        }
        if (member) {
            in_block[idx] = 1;
            b.all_edges.push_back(idx);
            if (classes.class_of[idx] > 0)
                b.class_edges.push_back(idx);
            else
                b.boundary_edges.push_back(idx);
        }
    }

    b.edge_shift_per_block =
        window.oriented() ? b.height * 2 * g.edge_count()
                          : b.height * (g.edge_count() + g.vertex_count);

    // Exterior edges: whatever no block copy claims.
    {
        std::vector<char> covered(window.edge_count(), 0);
        for (int e : b.all_edges)
            for (int blk = 0; blk < b.block_count; ++blk)
                covered[b.translate_edge(e, blk)] = 1;
        for (int idx = 0; idx < window.edge_count(); ++idx) {
            if (covered[idx]) continue;
            if (classes.class_of[idx] > 0)
                b.exterior_class_edges.push_back(idx);
            else
                b.exterior_bulk_edges.push_back(idx);
        }
    }

    // Local structure of block 0.
    b.local_vertex_window_id.resize(static_cast<std::size_t>(W) * (b.height + 1));
    for (int m = 0; m <= b.height; ++m)
        for (int i = 0; i < W; ++i)
            b.local_vertex_window_id[static_cast<std::size_t>(m) * W + i] =
                window.vertex_id(b.ball_outer[i], m);
    auto local_of = [&](int base_vertex, int level) { return level * W + outer_pos[base_vertex]; };
    b.edge_local_ends.reserve(b.all_edges.size());
    for (int idx : b.all_edges) {
        const EdgeRef r = window.edge_ref(idx);
        switch (r.kind) {
            case EdgeKind::horizontal: {
                const auto [u, v] = g.edges[r.item];
                b.edge_local_ends.emplace_back(local_of(u, r.level), local_of(v, r.level));
                break;
            }
            case EdgeKind::vertical:
                b.edge_local_ends.emplace_back(local_of(r.item, r.level),
                                               local_of(r.item, r.level + 1));
                break;
            case EdgeKind::diag_fwd: {
                const auto [u, v] = g.edges[r.item];
                b.edge_local_ends.emplace_back(local_of(u, r.level), local_of(v, r.level + 1));
                break;
            }
            case EdgeKind::diag_rev: {
                const auto [u, v] = g.edges[r.item];
                b.edge_local_ends.emplace_back(local_of(v, r.level), local_of(u, r.level + 1));
                break;
            }
        }
    }

    // Boundary vertex sets.
    std::vector<char> is_wall(g.vertex_count, 0);
    for (int w : b.wall_vertices) is_wall[w] = 1;
    auto push_walls = [&](std::vector<int>& out) {
        for (int m = 0; m <= b.height; ++m)
            for (int i = 0; i < W; ++i)
                if (is_wall[b.ball_outer[i]]) out.push_back(m * W + i);
    };
    push_walls(b.boundary_all);
    for (int v : b.ball) {
        b.boundary_all.push_back(local_of(v, 0));
        b.boundary_all.push_back(local_of(v, b.height));
    }
    push_walls(b.boundary_lower);
    for (int i = 0; i < W; ++i)
        if (!is_wall[b.ball_outer[i]]) b.boundary_lower.push_back(i);  // level 0
    push_walls(b.boundary_upper);
    for (int i = 0; i < W; ++i)
        if (!is_wall[b.ball_outer[i]]) b.boundary_upper.push_back(b.height * W + i);
    for (auto* s : {&b.boundary_all, &b.boundary_lower, &b.boundary_upper})
        std::sort(s->begin(), s->end());

    return b;
}

}  // namespace perclab
