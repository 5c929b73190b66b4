#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace perclab {

// Finite connected simple graph with dense integer vertex ids. This is the
// layer graph from which ladders are built; it is immutable after
// construction and safe to share across threads.
struct BaseGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted, unique
    std::vector<std::vector<int>> adjacency;
    std::vector<std::string> labels;  // optional per-vertex names; empty when unused

    int edge_count() const { return static_cast<int>(edges.size()); }

    // id of normalized edge {u,v}, or -1 when absent
    int edge_id(int u, int v) const;
};

// Validates: ids in range, no self-loops, no duplicates, connected.
BaseGraph make_base_graph(int vertex_count, std::vector<std::pair<int, int>> edge_list,
                          std::vector<std::string> labels = {});

BaseGraph make_path_graph(int n);
BaseGraph make_cycle_graph(int n);
// Center vertex 0 with `arms` paths of `arm_length` vertices each.
BaseGraph make_star_graph(int arms, int arm_length);

// Line-oriented format: '#' starts a comment, "vertex <id>" declares a vertex
// (needed only for the single-vertex graph), "<u> <v>" declares an edge.
BaseGraph parse_base_graph(std::istream& in);
BaseGraph load_base_graph_file(const std::string& path);

std::vector<int> distances_from(const BaseGraph& g, int source);
std::vector<int> distances_from_set(const BaseGraph& g, const std::vector<int>& sources);

}  // namespace perclab
