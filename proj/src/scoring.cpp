#include "pprgm/scoring.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace pprgm {

double pair_term(double pu, double pv, double sigma) {
    if (pu < 0.0 || pv < 0.0)
        throw std::invalid_argument("pair_term inputs must be >= 0");
    if (pu == 0.0 && pv == 0.0)
        return 0.0;
    return std::min(pu, pv) / (std::max(pu, pv) + sigma);
}

double ne_increment(std::uint32_t deg_u, std::uint32_t deg_v, double alpha,
                    double sigma) {
    if (deg_u == 0 || deg_v == 0)
        throw std::invalid_argument("ne_increment requires positive degrees");
    const double c = alpha * (1.0 - alpha);
    return pair_term(c / deg_u, c / deg_v, sigma);
}

SeedLabelStore SeedLabelStore::build(const Graph &g1, const Graph &g2,
                                     const SeedSet &seeds, const PPRParams &params,
                                     int threads) {
    SeedLabelStore store;
    store.seed_count_ = static_cast<std::uint32_t>(seeds.pairs.size());
    store.left_.resize(g1.vertex_count());
    store.right_.resize(g2.vertex_count());

    const std::size_t k = seeds.pairs.size();
    std::vector<PushResult> pushed_left(k), pushed_right(k);

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            pushed_left[i] = forward_push(g1, seeds.pairs[i].left, params);
            pushed_right[i] = forward_push(g2, seeds.pairs[i].right, params);
        }
    };

    if (threads <= 1 || k < 2) {
        run_range(0, k);
    } else {
        std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), k);
        std::vector<std::thread> pool;
        std::size_t chunk = (k + nt - 1) / nt;
        for (std::size_t t = 0; t < nt; ++t)
            pool.emplace_back(run_range, t * chunk, std::min(k, (t + 1) * chunk));
        for (auto &th : pool)
            th.join();
    }

    // merge in seed order so each vertex's label list is sorted by seed index
    for (std::size_t i = 0; i < k; ++i) {
        const auto idx = static_cast<std::uint32_t>(i);
        for (const auto &[v, val] : pushed_left[i].reserves)
            store.left_[v].push_back({idx, val});
        for (const auto &[v, val] : pushed_right[i].reserves)
            store.right_[v].push_back({idx, val});
        store.push_count_ += pushed_left[i].push_count + pushed_right[i].push_count;
    }
    return store;
}

double basic_score(Vertex u, Vertex v, const SeedLabelStore &labels, double sigma) {
    const auto &lu = labels.left_labels(u);
    const auto &lv = labels.right_labels(v);
    const auto &shorter = lu.size() <= lv.size() ? lu : lv;
    const auto &longer = lu.size() <= lv.size() ? lv : lu;

    double score = 0;
    for (const auto &e : shorter) {
        auto it = std::lower_bound(longer.begin(), longer.end(), e.seed_index,
                                   [](const LabelEntry &a, std::uint32_t k) {
                                       return a.seed_index < k;
                                   });
        if (it != longer.end() && it->seed_index == e.seed_index)
            score += pair_term(e.value, it->value, sigma);
    }
    return score;
}

} // namespace pprgm
