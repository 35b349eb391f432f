#pragma once

#include "pprgm/graph.hpp"
#include "pprgm/random_model.hpp"

namespace pprgm::fixtures {

// Instance where one round of order-1 percolation is misleading: the wrong
// pair (4 in G1, 3 in G2) collects a mark from all three seeds while the
// true pairs (3,3) and (4,4) collect two each. The graphs differ only in
// which contested vertex the degree-2 seed 1 touches. The contested
// vertices are adjacent, so the missing seed edge is compensated at walk
// order 2, and their gadgets (eight leaves on 3, a path tail on 4) hold
// their signatures apart at order >= 2: with exact PPR at alpha = 0.3 the
// true pair (3,3) outscores the wrong pair while order-1 marks say the
// opposite.
//
//   ids: 0,1,2 seeds; 3,4 contested; 5-12 leaves of 3; 13-14 path tail
//        of 4; 15,16,17 leaves of seeds 0,1,2; 18 floater leaf
struct MisledLocal {
    Graph g1;
    Graph g2;
    SeedSet seeds;
    VertexPair wrong{4, 3};
    VertexPair right_a{3, 3};
    VertexPair right_b{4, 4};
};

inline MisledLocal misled_local_instance() {
    MisledLocal fx;
    std::vector<std::pair<Vertex, Vertex>> shared = {
        {0, 3}, {0, 4}, {2, 3}, {2, 4}, {3, 4}, {0, 15}, {1, 16},
        {2, 17}, {4, 13}, {13, 14}};
    for (Vertex leaf = 5; leaf <= 12; ++leaf)
        shared.push_back({3, leaf});
    auto e1 = shared;
    e1.push_back({1, 4});
    e1.push_back({3, 18});
    auto e2 = shared;
    e2.push_back({1, 3});
    e2.push_back({4, 18});
    fx.g1 = Graph::from_edges(19, e1);
    fx.g2 = Graph::from_edges(19, e2);
    fx.seeds.pairs = {{0, 0}, {1, 1}, {2, 2}};
    fx.seeds.correct_count = 3;
    return fx;
}

} // namespace pprgm::fixtures
