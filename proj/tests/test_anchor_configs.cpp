#include <doctest.h>

#include <algorithm>

#include "perclab/anchor_config.hpp"
#include "perclab/connectivity.hpp"

using namespace perclab;

namespace {

// Window/class pairs are safe to move; block geometries and slot spaces point
// back into them, so those are built at the use site.
struct Instance {
    LadderWindow window;
    EdgeClassMap classes;
};

struct Fixture {
    const Instance& instance;
    BlockGeometry block;
    BlockSlotSpace space;
    const LadderWindow& window;
    const EdgeClassMap& classes;

    Fixture(const Instance& inst, int center, int radius)
        : instance(inst),
          block(build_block_geometry(inst.window, inst.classes, center, radius)),
          space(make_block_slot_space(block)),
          window(inst.window),
          classes(inst.classes) {}
};

// Segment ball of radius 3: interior {1..7} of a 9-path, walls {0,8},
// 7 interior columns and 6 interior layer edges, block height 16.
Instance segment_ball_unoriented_instance() {
    LadderWindow w(make_path_graph(9), Orientation::unoriented, 0, 16);
    EdgeClassMap map = classify_edges(
        w, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}, {1, 2, 3, 4, 5, 6, 7});
    return {std::move(w), std::move(map)};
}

// Segment ball of radius 2: interior {0,1,2,3} of a 6-path, wall {4},
// 3 interior edges, oriented block height 8.
Instance segment_ball_oriented_instance() {
    LadderWindow w(make_path_graph(6), Orientation::oriented, 0, 8);
    EdgeClassMap map = classify_edges(w, {{0, 1}, {1, 2}, {2, 3}}, {});
    return {std::move(w), std::move(map)};
}

}  // namespace

TEST_CASE("unoriented anchor on the segment ball") {
    const Instance inst = segment_ball_unoriented_instance();
    const Fixture f(inst, 4, 3);
    const UnorientedBlockAnchor anchor = build_unoriented_anchor(f.space);

    SUBCASE("vertices are ordered closest-to-outside first, ties by id") {
        CHECK(anchor.vertex_order == std::vector<int>{1, 7, 2, 6, 3, 5, 4});
    }

    SUBCASE("escape paths head to the shell along least-id geodesics") {
        // center column 4 escapes through 3, 2, 1
        const auto& path = anchor.escape_paths.back();
        std::vector<std::pair<int, int>> edges;
        for (int eid : path) edges.push_back(f.window.base().edges[eid]);
        CHECK(edges == std::vector<std::pair<int, int>>{{3, 4}, {2, 3}, {1, 2}});
        // shell vertices have empty escape paths
        CHECK(anchor.escape_paths[0].empty());
        CHECK(anchor.escape_paths[1].empty());
    }

    SUBCASE("closed boundary keeps every boundary vertex to itself") {
        BoundaryReach reach(f.block);
        const auto closed = reach.singleton_reach(
            f.space.block_config(f.space.assemble(anchor.class_bits, false, false), false));
        for (std::size_t i = 0; i < closed.size(); ++i) CHECK(closed[i] == (1ULL << i));
    }

    SUBCASE("open boundary connects the entire block boundary") {
        BoundaryReach reach(f.block);
        const auto full = reach.singleton_reach(
            f.space.block_config(f.space.assemble(anchor.class_bits, true, true), false));
        const std::uint64_t all = (1ULL << f.block.boundary_all.size()) - 1;
        for (std::size_t i = 0; i < full.size(); ++i) CHECK(full[i] == all);
    }

    SUBCASE("middle layer is fully open, stubs match the order") {
        // stub over the j-th ordered vertex spans exactly j rungs at each end
        const int L = static_cast<int>(f.block.ball.size());
        for (int j = 1; j <= L; ++j) {
            const int w = anchor.vertex_order[j - 1];
            int open_rungs = 0;
            for (int i = 0; i < f.space.class_slots(); ++i) {
                const EdgeRef r = f.window.edge_ref(f.space.class_slot_edge[i]);
                if (r.kind == EdgeKind::vertical && r.item == w && anchor.class_bits.get(i))
                    ++open_rungs;
            }
            CHECK(open_rungs == 2 * j);
        }
        for (int i = 0; i < f.space.class_slots(); ++i) {
            const EdgeRef r = f.window.edge_ref(f.space.class_slot_edge[i]);
            if (r.kind == EdgeKind::horizontal && r.level == L + 1)
                CHECK(anchor.class_bits.get(i));
        }
    }

    SUBCASE("oriented block is rejected") {
        const Instance other = segment_ball_oriented_instance();
        const Fixture g(other, 1, 2);
        CHECK_THROWS(build_unoriented_anchor(g.space));
    }
}

TEST_CASE("oriented anchor pair on the segment ball") {
    const Instance inst = segment_ball_oriented_instance();
    const Fixture f(inst, 1, 2);
    const OrientedBlockAnchors anchors = build_oriented_anchors(f.space);

    SUBCASE("cut anchor closes exactly the middle transition, open anchor opens all") {
        const int K = f.classes.class_edge_count;
        CHECK(anchors.middle_slots.size() == static_cast<std::size_t>(2 * K));
        CHECK(anchors.open_class_bits.count() == f.space.class_slots());
        CHECK(anchors.cut_class_bits.count() == f.space.class_slots() - 2 * K);
        for (int slot : anchors.middle_slots) {
            CHECK_FALSE(anchors.cut_class_bits.get(slot));
            const EdgeRef r = f.window.edge_ref(f.space.class_slot_edge[slot]);
            CHECK(r.level == K);  // from height K to K+1
        }
    }

    SUBCASE("cut element lies in the cut part, open element outside") {
        const auto measures = f.space.measures({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, 0.3, 0.2);
        CHECK(measures.in_cut(f.space.assemble(anchors.cut_class_bits, false, true)));
        CHECK_FALSE(measures.in_cut(f.space.assemble(anchors.open_class_bits, false, true)));
    }

    SUBCASE("open anchor under a closed boundary never escapes the cut anchor's reach") {
        BoundaryReach reach(f.block);
        const auto open_closed = reach.singleton_reach(
            f.space.block_config(f.space.assemble(anchors.open_class_bits, false, false), false));
        const auto cut_full = reach.singleton_reach(
            f.space.block_config(f.space.assemble(anchors.cut_class_bits, true, true), false));
        for (std::size_t i = 0; i < open_closed.size(); ++i)
            CHECK((open_closed[i] & ~cut_full[i]) == 0);
        // and literally over every boundary subset
        const int ns = static_cast<int>(f.block.boundary_lower.size());
        REQUIRE(ns <= 16);
        const BitVec open_cfg =
            f.space.block_config(f.space.assemble(anchors.open_class_bits, false, false), false);
        const BitVec cut_cfg =
            f.space.block_config(f.space.assemble(anchors.cut_class_bits, true, true), false);
        for (std::uint64_t a = 1; a < (1ULL << ns); ++a) {
            const auto lo = boundary_cluster(f.block, open_cfg, a);
            const auto hi = boundary_cluster(f.block, cut_cfg, a);
            CHECK((lo & ~hi) == 0);
        }
    }

    SUBCASE("unoriented block is rejected") {
        auto g = segment_ball_unoriented();
        CHECK_THROWS(build_oriented_anchors(g.space));
    }
}
