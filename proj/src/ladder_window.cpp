#include "perclab/ladder_window.hpp"

#include <algorithm>
#include <string>

#include "perclab/errors.hpp"

namespace perclab {

LadderWindow::LadderWindow(BaseGraph base, Orientation orientation, int level_min, int level_max)
    : base_(std::move(base)), orient_(orientation), level_min_(level_min), level_max_(level_max) {
    if (level_min_ >= level_max_)
        throw ValidationError("empty level range [" + std::to_string(level_min_) + "," +
                              std::to_string(level_max_) + "]: need level_min < level_max");
    const int E = base_.edge_count();
    const int V = base_.vertex_count;
    const int levels = level_count();
    if (orient_ == Orientation::unoriented) {
        stride_ = E + V;
        edge_count_ = levels * E + (levels - 1) * V;
    } else {
        stride_ = 2 * E;
        edge_count_ = (levels - 1) * 2 * E;
    }
}

EdgeRef LadderWindow::edge_ref(int index) const {
    const int E = base_.edge_count();
    if (orient_ == Orientation::unoriented) {
        const int block = index / stride_;
        const int off = index - block * stride_;
        const int level = level_min_ + block;
        if (off < E) return {level, EdgeKind::horizontal, off};
        return {level, EdgeKind::vertical, off - E};
    }
    const int block = index / stride_;
    const int off = index - block * stride_;
    const int level = level_min_ + block;
    if (off < E) return {level, EdgeKind::diag_fwd, off};
    return {level, EdgeKind::diag_rev, off - E};
}

int LadderWindow::edge_index(const EdgeRef& ref) const {
    const int E = base_.edge_count();
    const int block = ref.level - level_min_;
    if (orient_ == Orientation::unoriented) {
        if (ref.kind == EdgeKind::horizontal) return block * stride_ + ref.item;
        return block * stride_ + E + ref.item;
    }
    if (ref.kind == EdgeKind::diag_fwd) return block * stride_ + ref.item;
    return block * stride_ + E + ref.item;
}

std::pair<int, int> LadderWindow::edge_endpoints(int index) const {
    const EdgeRef r = edge_ref(index);
    switch (r.kind) {
        case EdgeKind::horizontal: {
            const auto [u, v] = base_.edges[r.item];
            return {vertex_id(u, r.level), vertex_id(v, r.level)};
        }
        case EdgeKind::vertical:
            return {vertex_id(r.item, r.level), vertex_id(r.item, r.level + 1)};
        case EdgeKind::diag_fwd: {
            const auto [u, v] = base_.edges[r.item];
            return {vertex_id(u, r.level), vertex_id(v, r.level + 1)};
        }
        case EdgeKind::diag_rev: {
            const auto [u, v] = base_.edges[r.item];
            return {vertex_id(v, r.level), vertex_id(u, r.level + 1)};
        }
    }
    throw ValidationError("corrupt edge reference");
}

std::uint64_t LadderWindow::structure_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    };
    mix(orient_ == Orientation::oriented ? 1 : 0);
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(level_min_)));
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(level_max_)));
    mix(static_cast<std::uint64_t>(base_.vertex_count));
    for (auto [u, v] : base_.edges) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

EdgeClassMap classify_edges(const LadderWindow& window,
                            const std::vector<std::pair<int, int>>& distinguished_edges,
                            const std::vector<int>& distinguished_vertices) {
    const BaseGraph& g = window.base();
    if (window.oriented() && !distinguished_vertices.empty())
        throw ValidationError("vertical edge classes are undefined on an oriented ladder");

    std::vector<int> edge_ids;
    for (auto [u, v] : distinguished_edges) {
        const int id = g.edge_id(u, v);
        if (id < 0)
            throw ValidationError("distinguished edge {" + std::to_string(u) + "," +
                                  std::to_string(v) + "} is not a base edge");
        edge_ids.push_back(id);
    }
    for (int w : distinguished_vertices)
        if (w < 0 || w >= g.vertex_count)
            throw ValidationError("distinguished vertex " + std::to_string(w) +
                                  " is not a base vertex");
    {
        auto sorted = edge_ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("duplicate distinguished edge");
        auto vs = distinguished_vertices;
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            throw ValidationError("duplicate distinguished vertex");
    }

    EdgeClassMap map;
    map.class_edge_count = static_cast<int>(edge_ids.size());
    map.class_vertex_count = static_cast<int>(distinguished_vertices.size());
    map.distinguished_edges.reserve(edge_ids.size());
    for (int id : edge_ids) map.distinguished_edges.push_back(g.edges[id]);
    map.distinguished_vertices = distinguished_vertices;
    map.class_of.assign(window.edge_count(), 0);

    std::vector<std::uint16_t> edge_class(g.edge_count(), 0);
    for (std::size_t i = 0; i < edge_ids.size(); ++i)
        edge_class[edge_ids[i]] = static_cast<std::uint16_t>(i + 1);
    std::vector<std::uint16_t> vertex_class(g.vertex_count, 0);
    for (std::size_t j = 0; j < distinguished_vertices.size(); ++j)
        vertex_class[distinguished_vertices[j]] =
            static_cast<std::uint16_t>(map.class_edge_count + j + 1);

    for (int idx = 0; idx < window.edge_count(); ++idx) {
        const EdgeRef r = window.edge_ref(idx);
        switch (r.kind) {
            case EdgeKind::horizontal:
            case EdgeKind::diag_fwd:
            case EdgeKind::diag_rev:
                map.class_of[idx] = edge_class[r.item];
                break;
            case EdgeKind::vertical:
                map.class_of[idx] = vertex_class[r.item];
                break;
        }
    }
    return map;
}

}  // namespace perclab
