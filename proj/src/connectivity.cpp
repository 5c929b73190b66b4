#include "perclab/connectivity.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "perclab/errors.hpp"

namespace perclab {

namespace {

int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void uf_union(std::vector<int>& parent, int a, int b) {
    a = uf_find(parent, a);
    b = uf_find(parent, b);
    if (a != b) parent[b] = a;
}

}  // namespace

std::vector<int> clusters(const LadderWindow& window, const BitVec& config) {
    if (window.oriented())
        throw ValidationError("clusters() is defined on unoriented windows; use forward_cluster");
    if (config.size() != window.edge_count())
        throw ValidationError("configuration size does not match window");
    std::vector<int> parent(window.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    for (int e = 0; e < window.edge_count(); ++e)
        if (config.get(e)) {
            const auto [a, b] = window.edge_endpoints(e);
            uf_union(parent, a, b);
        }
    std::vector<int> comp(window.vertex_count());
    for (int v = 0; v < window.vertex_count(); ++v) comp[v] = uf_find(parent, v);
    return comp;
}

std::vector<int> forward_cluster(const LadderWindow& window, const BitVec& config, int origin) {
    if (!window.oriented())
        throw ValidationError("forward_cluster() is defined on oriented windows; use clusters");
    if (config.size() != window.edge_count())
        throw ValidationError("configuration size does not match window");
    if (origin < 0 || origin >= window.vertex_count())
        throw ValidationError("origin is not a window vertex");
    std::vector<char> reached(window.vertex_count(), 0);
    reached[origin] = 1;
    const int per = 2 * window.base().edge_count();
    const int origin_level = window.vertex_of(origin).second;
    for (int n = origin_level; n < window.level_max(); ++n) {
        const int base = (n - window.level_min()) * per;
        for (int k = 0; k < per; ++k) {
            const int e = base + k;
            if (!config.get(e)) continue;
            const auto [tail, head] = window.edge_endpoints(e);
            if (reached[tail]) reached[head] = 1;
        }
    }
    std::vector<int> out;
    for (int v = 0; v < window.vertex_count(); ++v)
        if (reached[v]) out.push_back(v);
    return out;
}

ReachQuery make_crossing_query(const LadderWindow& window) {
    ReachQuery q;
    for (int v = 0; v < window.base().vertex_count; ++v)
        q.sources.push_back(window.vertex_id(v, window.level_min()));
    q.target_level = window.level_max();
    return q;
}

ReachQuery make_origin_query(const LadderWindow& window, const std::vector<int>& origin_columns,
                             bool include_lateral) {
    ReachQuery q;
    for (int v : origin_columns) q.sources.push_back(window.vertex_id(v, window.level_min()));
    q.target_level = window.level_max();
    if (include_lateral) {
        // Lateral boundary: columns of minimal/maximal base id at every level.
        const int lo = 0, hi = window.base().vertex_count - 1;
        for (int n = window.level_min(); n <= window.level_max(); ++n) {
            q.target_vertices.push_back(window.vertex_id(lo, n));
            if (hi != lo) q.target_vertices.push_back(window.vertex_id(hi, n));
        }
    }
    return q;
}

ReachEvaluator::ReachEvaluator(const LadderWindow& window, ReachQuery query)
    : window_(window), query_(std::move(query)) {
    if (query_.sources.empty()) throw ValidationError("reach query needs at least one source");
    for (int s : query_.sources)
        if (s < 0 || s >= window.vertex_count())
            throw ValidationError("reach query source is not a window vertex");
    if (!query_.target_level && query_.target_vertices.empty())
        throw ValidationError("reach query needs targets or a target level");
    if (query_.target_level &&
        (*query_.target_level < window.level_min() || *query_.target_level > window.level_max()))
        throw ValidationError("target level outside the window");
    if (window.oriented() && query_.target_level)
        for (int s : query_.sources)
            if (window.vertex_of(s).second > *query_.target_level)
                throw ValidationError("oriented reach only goes upward in level");

    is_target_.assign(window.vertex_count(), 0);
    for (int t : query_.target_vertices) {
        if (t < 0 || t >= window.vertex_count())
            throw ValidationError("reach query target is not a window vertex");
        is_target_[t] = 1;
    }
    if (query_.target_level)
        for (int v = 0; v < window.base().vertex_count; ++v)
            is_target_[window.vertex_id(v, *query_.target_level)] = 1;

    endpoints_.resize(window.edge_count());
    for (int e = 0; e < window.edge_count(); ++e) endpoints_[e] = window.edge_endpoints(e);
    if (window.oriented()) {
        frontier_.assign(window.vertex_count(), 0);
    } else {
        parent_.resize(window.vertex_count());
    }
}

bool ReachEvaluator::evaluate(const BitVec& config) {
    if (config.size() != window_.edge_count())
        throw ValidationError("configuration size does not match window");
    return window_.oriented() ? evaluate_oriented(config) : evaluate_unoriented(config);
}

bool ReachEvaluator::evaluate_unoriented(const BitVec& config) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (int e = 0; e < window_.edge_count(); ++e)
        if (config.get(e)) uf_union(parent_, endpoints_[e].first, endpoints_[e].second);
    // mark source roots, then scan targets
    std::vector<int> roots;
    roots.reserve(query_.sources.size());
    for (int s : query_.sources) roots.push_back(uf_find(parent_, s));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (int v = 0; v < window_.vertex_count(); ++v) {
        if (!is_target_[v]) continue;
        if (std::binary_search(roots.begin(), roots.end(), uf_find(parent_, v))) return true;
    }
    return false;
}

bool ReachEvaluator::evaluate_oriented(const BitVec& config) {
    std::fill(frontier_.begin(), frontier_.end(), 0);
    int max_source_level = window_.level_min();
    for (int s : query_.sources) {
        frontier_[s] = 1;
        if (is_target_[s]) return true;
        max_source_level = std::max(max_source_level, window_.vertex_of(s).second);
    }
    const int V = window_.base().vertex_count;
    const int per = 2 * window_.base().edge_count();
    for (int n = window_.level_min(); n < window_.level_max(); ++n) {
        const int base = (n - window_.level_min()) * per;
        bool alive = false;
        const int row = (n - window_.level_min()) * V;
        for (int v = 0; v < V; ++v)
            if (frontier_[row + v]) {
                alive = true;
                break;
            }
        if (!alive && n >= max_source_level) return false;
        for (int k = 0; k < per; ++k) {
            const int e = base + k;
            if (!config.get(e)) continue;
            const auto [tail, head] = endpoints_[e];
            if (frontier_[tail] && !frontier_[head]) {
                frontier_[head] = 1;
                if (is_target_[head]) return true;
            }
        }
    }
    return false;
}

bool reach_indicator(const LadderWindow& window, const BitVec& config, const ReachQuery& query) {
    ReachEvaluator ev(window, query);
    return ev.evaluate(config);
}

BoundaryReach::BoundaryReach(const BlockGeometry& block) : block_(block) {
    const auto& sources = block_.window->oriented() ? block_.boundary_lower : block_.boundary_all;
    const auto& targets = block_.window->oriented() ? block_.boundary_upper : block_.boundary_all;
    if (sources.size() > 64 || targets.size() > 64)
        throw ValidationError("block boundary exceeds 64 vertices; subset masks unavailable");
    parent_.resize(block_.local_vertex_count());
    reached_.resize(block_.local_vertex_count());
    out_pos_.assign(block_.local_vertex_count(), -1);
    for (std::size_t j = 0; j < targets.size(); ++j) out_pos_[targets[j]] = static_cast<int>(j);
}

std::vector<std::uint64_t> BoundaryReach::singleton_reach(const BitVec& block_bits) {
    if (block_bits.size() != block_.block_edge_count())
        throw ValidationError("block configuration size mismatch");
    const bool oriented = block_.window->oriented();
    const auto& sources = oriented ? block_.boundary_lower : block_.boundary_all;
    const auto& targets = oriented ? block_.boundary_upper : block_.boundary_all;
    std::vector<std::uint64_t> result(sources.size(), 0);

    if (!oriented) {
        std::iota(parent_.begin(), parent_.end(), 0);
        for (int k = 0; k < block_bits.size(); ++k)
            if (block_bits.get(k))
                uf_union(parent_, block_.edge_local_ends[k].first,
                         block_.edge_local_ends[k].second);
        // group boundary vertices by component
        std::unordered_map<int, std::uint64_t> by_root;
        for (std::size_t j = 0; j < targets.size(); ++j)
            by_root[uf_find(parent_, targets[j])] |= 1ULL << j;
        for (std::size_t i = 0; i < sources.size(); ++i)
            result[i] = by_root[uf_find(parent_, sources[i])];
        return result;
    }

    // Oriented: propagate 64-bit source masks up the block in one pass; block
    // edges are already sorted by transition.
    std::vector<std::uint64_t> mask(block_.local_vertex_count(), 0);
    for (std::size_t i = 0; i < sources.size(); ++i) mask[sources[i]] |= 1ULL << i;
    for (int k = 0; k < block_bits.size(); ++k)
        if (block_bits.get(k)) {
            const auto [tail, head] = block_.edge_local_ends[k];
            mask[head] |= mask[tail];
        }
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const std::uint64_t m = mask[targets[j]];
        for (std::size_t i = 0; i < sources.size(); ++i)
            if ((m >> i) & 1ULL) result[i] |= 1ULL << j;
    }
    return result;
}

std::uint64_t boundary_cluster(const BlockGeometry& block, const BitVec& block_bits,
                               std::uint64_t subset_mask) {
    const bool oriented = block.window->oriented();
    const auto& sources = oriented ? block.boundary_lower : block.boundary_all;
    const auto& targets = oriented ? block.boundary_upper : block.boundary_all;
    if (sources.size() > 64 || targets.size() > 64)
        throw ValidationError("block boundary exceeds 64 vertices; subset masks unavailable");
    if (subset_mask == 0) throw ValidationError("boundary subset must be nonempty");
    if (sources.size() < 64 && (subset_mask >> sources.size()) != 0)
        throw ValidationError("boundary subset has bits outside the boundary list");
    if (block_bits.size() != block.block_edge_count())
        throw ValidationError("block configuration size mismatch");

    // Direct multi-source computation; singleton_reach unions must agree.
    std::uint64_t out = 0;
    if (!oriented) {
        std::vector<int> parent(block.local_vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        for (int k = 0; k < block_bits.size(); ++k)
            if (block_bits.get(k))
                uf_union(parent, block.edge_local_ends[k].first, block.edge_local_ends[k].second);
        std::vector<char> root_marked(block.local_vertex_count(), 0);
        for (std::size_t i = 0; i < sources.size(); ++i)
            if ((subset_mask >> i) & 1ULL) root_marked[uf_find(parent, sources[i])] = 1;
        for (std::size_t j = 0; j < targets.size(); ++j)
            if (root_marked[uf_find(parent, targets[j])]) out |= 1ULL << j;
        return out;
    }
    std::vector<char> reached(block.local_vertex_count(), 0);
    for (std::size_t i = 0; i < sources.size(); ++i)
        if ((subset_mask >> i) & 1ULL) reached[sources[i]] = 1;
    for (int k = 0; k < block_bits.size(); ++k)
        if (block_bits.get(k)) {
            const auto [tail, head] = block.edge_local_ends[k];
            if (reached[tail]) reached[head] = 1;
        }
    for (std::size_t j = 0; j < targets.size(); ++j)
        if (reached[targets[j]]) out |= 1ULL << j;
    return out;
}

}  // namespace perclab
