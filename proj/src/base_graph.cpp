#include "perclab/base_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "perclab/errors.hpp"

namespace perclab {

int BaseGraph::edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    const std::pair<int, int> key(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) return -1;
    return static_cast<int>(it - edges.begin());
}

BaseGraph make_base_graph(int vertex_count, std::vector<std::pair<int, int>> edge_list,
                          std::vector<std::string> labels) {
    if (vertex_count <= 0) throw ValidationError("base graph needs at least one vertex");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw ValidationError("edge endpoint " + std::to_string(u < 0 || u >= vertex_count ? u : v) +
                                  " out of range [0," + std::to_string(vertex_count - 1) + "]");
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    for (std::size_t i = 1; i < edge_list.size(); ++i)
        if (edge_list[i] == edge_list[i - 1])
            throw ValidationError("duplicate edge {" + std::to_string(edge_list[i].first) + "," +
                                  std::to_string(edge_list[i].second) + "}");

    BaseGraph g;
    g.vertex_count = vertex_count;
    g.edges = std::move(edge_list);
    g.labels = std::move(labels);
    g.adjacency.assign(vertex_count, {});
    for (auto [u, v] : g.edges) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());

    const auto dist = distances_from(g, 0);
    for (int v = 0; v < vertex_count; ++v)
        if (dist[v] < 0)
            throw ValidationError("base graph is disconnected (vertex " + std::to_string(v) +
                                  " unreachable from 0)");
    return g;
}

BaseGraph make_path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_base_graph(n, std::move(e));
}

BaseGraph make_cycle_graph(int n) {
    if (n < 3) throw ValidationError("cycle graph needs at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return make_base_graph(n, std::move(e));
}

BaseGraph make_star_graph(int arms, int arm_length) {
    if (arms < 1 || arm_length < 1) throw ValidationError("star graph needs arms >= 1, arm_length >= 1");
    std::vector<std::pair<int, int>> e;
    int next = 1;
    for (int a = 0; a < arms; ++a) {
        int prev = 0;
        for (int k = 0; k < arm_length; ++k) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    return make_base_graph(next, std::move(e));
}

BaseGraph parse_base_graph(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    bool any_decl = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "vertex") {
            int v;
            if (!(ls >> v) || v < 0)
                throw ValidationError("line " + std::to_string(line_no) + ": expected 'vertex <id>'");
            max_id = std::max(max_id, v);
            any_decl = true;
            continue;
        }
        int u, v;
        try {
            u = std::stoi(first);
        } catch (...) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected edge 'u v' or 'vertex u'");
        }
        if (!(ls >> v))
            throw ValidationError("line " + std::to_string(line_no) + ": edge line needs two vertex ids");
        if (u < 0 || v < 0)
            throw ValidationError("line " + std::to_string(line_no) + ": negative vertex id");
        edges.emplace_back(u, v);
        max_id = std::max({max_id, u, v});
        any_decl = true;
    }
    if (!any_decl) throw ValidationError("base graph file declares no vertices or edges");
    return make_base_graph(max_id + 1, std::move(edges));
}

BaseGraph load_base_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open base graph file: " + path);
    return parse_base_graph(in);
}

std::vector<int> distances_from(const BaseGraph& g, int source) {
    return distances_from_set(g, {source});
}

std::vector<int> distances_from_set(const BaseGraph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.vertex_count, -1);
    std::vector<int> queue;
    queue.reserve(g.vertex_count);
    for (int s : sources) {
        if (s < 0 || s >= g.vertex_count) throw ValidationError("distance source out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : g.adjacency[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

}  // namespace perclab
