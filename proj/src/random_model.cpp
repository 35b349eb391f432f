#include "pprgm/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "pprgm/rng.hpp"

namespace pprgm {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

} // namespace

Graph gen_er(std::uint32_t n, double p, std::uint64_t rng_seed) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    check_probability(p, "p");

    std::vector<std::pair<Vertex, Vertex>> edges;
    if (p >= 1.0) {
        edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
    } else if (p > 0.0) {
        // geometric skipping over the C(n,2) cells in row-major order; cell k
        // of row u is the pair (u, u+1+k)
        Rng rng(rng_seed);
        const double log1mp = std::log1p(-p);
        const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        std::uint64_t cur = 0;
        Vertex row = 0;                  // current row u
        std::uint64_t row_start = 0;     // cell index of (row, row+1)
        for (;;) {
            double skip_f = std::floor(std::log1p(-rng.next_double()) / log1mp);
            if (skip_f >= static_cast<double>(total))
                break;
            cur += static_cast<std::uint64_t>(skip_f);
            if (cur >= total)
                break;
            while (cur >= row_start + (n - 1 - row)) {
                row_start += n - 1 - row;
                ++row;
            }
            edges.emplace_back(row, static_cast<Vertex>(row + 1 + (cur - row_start)));
            ++cur;
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

CorrelatedPair sample_correlated(const Graph &base, double p_n, double p_e,
                                 std::uint64_t rng_seed) {
    check_probability(p_n, "p_n");
    check_probability(p_e, "p_e");

    const Vertex n = base.vertex_count();
    CorrelatedPair cp;
    cp.base = base;
    cp.kept1.resize(n);
    cp.kept2.resize(n);

    Rng vrng = Rng::substream(rng_seed, 0);
    for (Vertex v = 0; v < n; ++v)
        cp.kept1[v] = p_n >= 1.0 || vrng.bernoulli(p_n);
    for (Vertex v = 0; v < n; ++v)
        cp.kept2[v] = p_n >= 1.0 || vrng.bernoulli(p_n);

    Rng erng = Rng::substream(rng_seed, 1);
    std::vector<std::pair<Vertex, Vertex>> e1, e2;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : base.neighbors(u)) {
            if (v <= u)
                continue;
            // one independent coin per (edge, side); drawn in canonical edge
            // order so results are reproducible
            bool in1 = erng.bernoulli(p_e);
            bool in2 = erng.bernoulli(p_e);
            if (in1 && cp.kept1[u] && cp.kept1[v])
                e1.emplace_back(u, v);
            if (in2 && cp.kept2[u] && cp.kept2[v])
                e2.emplace_back(u, v);
        }
    }
    cp.g1 = Graph::from_edges(n, std::move(e1));
    cp.g2 = Graph::from_edges(n, std::move(e2));
    return cp;
}

SeedSet sample_seeds(const CorrelatedPair &cp, std::uint32_t n_correct,
                     std::uint32_t n_wrong, std::uint32_t min_degree,
                     std::uint64_t rng_seed) {
    const Vertex n = cp.base.vertex_count();
    Rng rng(rng_seed);
    SeedSet seeds;

    std::vector<char> used_left(n, 0), used_right(n, 0);

    std::vector<Vertex> eligible;
    for (Vertex v = 0; v < n; ++v)
        if (cp.present_in_both(v) && cp.g1.degree(v) >= min_degree &&
            cp.g2.degree(v) >= min_degree)
            eligible.push_back(v);
    if (eligible.size() < n_correct)
        throw std::runtime_error("not enough seeds: " + std::to_string(eligible.size()) +
                                 " eligible vertices, " + std::to_string(n_correct) +
                                 " correct seeds requested");

    // partial Fisher-Yates over the eligible list
    for (std::uint32_t k = 0; k < n_correct; ++k) {
        std::size_t j = k + rng.next_below(eligible.size() - k);
        std::swap(eligible[k], eligible[j]);
        Vertex v = eligible[k];
        seeds.pairs.push_back({v, v});
        used_left[v] = used_right[v] = 1;
    }
    seeds.correct_count = n_correct;

    std::vector<Vertex> lefts, rights;
    for (Vertex v = 0; v < n; ++v) {
        if (cp.kept1[v] && cp.g1.degree(v) >= 1 && !used_left[v])
            lefts.push_back(v);
        if (cp.kept2[v] && cp.g2.degree(v) >= 1 && !used_right[v])
            rights.push_back(v);
    }
    if (lefts.size() < n_wrong || rights.size() < n_wrong || (n_wrong > 0 && n < 2))
        throw std::runtime_error("not enough seeds: too few vertices for wrong pairs");

    std::uint32_t made = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000ULL * (n_wrong + 1) + 1000;
    while (made < n_wrong) {
        if (++attempts > max_attempts)
            throw std::runtime_error("not enough seeds: wrong-pair sampling exhausted");
        Vertex u = lefts[rng.next_below(lefts.size())];
        Vertex v = rights[rng.next_below(rights.size())];
        if (u == v || used_left[u] || used_right[v])
            continue;
        seeds.pairs.push_back({u, v});
        used_left[u] = 1;
        used_right[v] = 1;
        ++made;
    }
    seeds.wrong_count = n_wrong;
    return seeds;
}

} // namespace pprgm
