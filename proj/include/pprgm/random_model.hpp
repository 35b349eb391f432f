#pragma once

#include <cstdint>
#include <vector>

#include "pprgm/graph.hpp"

namespace pprgm {

struct SampleParams {
    std::uint32_t n = 0;
    double p = 0;   // edge probability of the base graph
    double p_n = 1; // vertex sampling probability
    double p_e = 1; // edge sampling probability
    std::uint64_t rng_seed = 0;
};

// Two correlated subsamples of one base graph. The three graphs share a
// single vertex-id space; vertices dropped by p_n stay as isolated ids, so
// the hidden correct matching is the identity map.
struct CorrelatedPair {
    Graph base;
    Graph g1;
    Graph g2;
    std::vector<char> kept1;
    std::vector<char> kept2;

    bool present_in_both(Vertex v) const { return kept1[v] && kept2[v]; }
};

struct SeedSet {
    std::vector<VertexPair> pairs; // correct pairs first, then wrong pairs
    std::uint32_t correct_count = 0;
    std::uint32_t wrong_count = 0;
};

// Erdos-Renyi G(n,p): each of the C(n,2) edges present independently with
// probability p. Deterministic for a given rng_seed.
Graph gen_er(std::uint32_t n, double p, std::uint64_t rng_seed);

CorrelatedPair sample_correlated(const Graph &base, double p_n, double p_e,
                                 std::uint64_t rng_seed);

// n_correct identity pairs drawn without replacement from vertices present in
// both graphs with degree >= min_degree on both sides; n_wrong pairs with
// left != right, degree >= 1 on their own side, and no side-vertex reuse.
// Throws std::runtime_error when there are not enough eligible vertices.
SeedSet sample_seeds(const CorrelatedPair &cp, std::uint32_t n_correct,
                     std::uint32_t n_wrong, std::uint32_t min_degree,
                     std::uint64_t rng_seed);

} // namespace pprgm
